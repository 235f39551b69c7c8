//! Special functions: the Lobachevsky function Λ, its difference Δ, the
//! spherical analogue δ with closed forms and symmetry reductions, the
//! two-parameter dilogarithm and the Schläfli series.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quadrature::{quad, quad_with_points, QuadResult};

/// Absolute quadrature tolerance used when a caller does not pass one.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Below this |cos 2τ| the δ integrand switches to its Taylor expansion.
const REMOVABLE_BAND: f64 = 1e-6;

/// Angles closer than this to a listed special value count as equal.
const ANGLE_EPS: f64 = 1e-12;

/// Schläfli series arguments with |X| above this bound are treated as
/// Euclidean/degenerate.
pub const SCHLAEFLI_X_LIMIT: f64 = 1.0 - 1e-12;

const SCHLAEFLI_MAX_TERMS: usize = 20_000_000;

/// `arccot` on the branch `(0, π)`.
pub fn arccot(x: f64) -> f64 {
    FRAC_PI_2 - x.atan()
}

// ---------------------------------------------------------------------------
// Lobachevsky function

const CLAUSEN_TERMS: usize = 40;

/// `ζ(2k) / (k (2k+1) (2π)^{2k})` for k = 1..=40.
fn clausen_coeffs() -> &'static [f64; CLAUSEN_TERMS] {
    static COEFFS: OnceLock<[f64; CLAUSEN_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; CLAUSEN_TERMS];
        let two_pi_sq = (2.0 * PI) * (2.0 * PI);
        let mut scale = 1.0;
        for (i, slot) in out.iter_mut().enumerate() {
            let k = i + 1;
            scale /= two_pi_sq;
            let zeta = match k {
                1 => PI.powi(2) / 6.0,
                2 => PI.powi(4) / 90.0,
                3 => PI.powi(6) / 945.0,
                4 => PI.powi(8) / 9450.0,
                _ => {
                    // tail beyond n = 1000 is below 1e-27
                    let s = -(2 * k as i32);
                    (1..=1000).rev().map(|n| (n as f64).powi(s)).sum()
                }
            };
            let kf = k as f64;
            *slot = zeta / (kf * (2.0 * kf + 1.0)) * scale;
        }
        out
    })
}

/// Clausen function `Cl₂(y) = -∫₀^y log|2 sin(t/2)| dt`.
fn clausen(y: f64, tol: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let y = y - two_pi * (y / two_pi).round();
    if y == 0.0 {
        return 0.0;
    }
    let y2 = y * y;
    let mut power = 1.0;
    let mut series = 0.0;
    for &c in clausen_coeffs() {
        power *= y2;
        let term = c * power;
        series += term;
        if (term * y).abs() < tol {
            break;
        }
    }
    y - y * y.abs().ln() + y * series
}

/// Lobachevsky function `Λ(x) = -∫₀ˣ log|2 sin t| dt`.
///
/// Evaluated through the Bernoulli expansion of the Clausen function after
/// reducing `2x` into `(-π, π]`; the expansion converges like `4^{-k}`.
pub fn lobachevsky(x: f64) -> f64 {
    lobachevsky_tol(x, 1e-18)
}

/// As [`lobachevsky`], truncating the expansion once terms drop below `tol`.
pub fn lobachevsky_tol(x: f64, tol: f64) -> f64 {
    0.5 * clausen(2.0 * x, tol)
}

/// `Δ(α, θ) = Λ(α + θ) - Λ(α - θ)`.
pub fn delta_cap(alpha: f64, theta: f64) -> f64 {
    lobachevsky(alpha + theta) - lobachevsky(alpha - theta)
}

pub fn delta_cap_tol(alpha: f64, theta: f64, tol: f64) -> f64 {
    lobachevsky_tol(alpha + theta, tol) - lobachevsky_tol(alpha - theta, tol)
}

// ---------------------------------------------------------------------------
// δ(α, θ)

/// `log(1 - c cos 2τ) / cos 2τ` with `c = cos 2α`, filled in by continuity
/// at `cos 2τ = 0`.
fn delta_integrand(alpha: f64, c: f64, tau: f64) -> f64 {
    let u = (2.0 * tau).cos();
    if u.abs() < REMOVABLE_BAND {
        return -c * (1.0 + u * c * (0.5 + u * c / 3.0));
    }
    let cu = c * u;
    let log_term = if cu < 0.5 {
        (-cu).ln_1p()
    } else {
        // 1 - cos2α cos2τ = sin²(α+τ) + sin²(α-τ), exact near the zeros
        let s1 = (alpha + tau).sin();
        let s2 = (alpha - tau).sin();
        (s1 * s1 + s2 * s2).ln()
    };
    log_term / u
}

/// Integrates `f` over `[lo, hi]` with breakpoints at every multiple of
/// π/4 in between. Those are the only places where the δ-type integrands
/// have removable points or logarithmic singularities.
pub(crate) fn integrate_split_quarter_pi<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo <= hi);
    let guard = 64.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    let k_start = (lo / FRAC_PI_4).ceil() as i64;
    let k_end = (hi / FRAC_PI_4).floor() as i64;
    let cuts: Vec<f64> = (k_start..=k_end)
        .map(|k| k as f64 * FRAC_PI_4)
        .filter(|&p| p - lo > guard && hi - p > guard)
        .collect();
    quad_with_points(f, lo, hi, &cuts, tol)
}

/// `δ(α, θ) = ∫_θ^{π/2} log(1 - cos2α cos2τ) dτ / cos2τ`, integrated
/// directly over whatever range the arguments describe.
pub fn delta_s(alpha: f64, theta: f64) -> Result<f64> {
    Ok(delta_s_tol(alpha, theta, DEFAULT_TOL)?.value)
}

/// [`delta_s`] with an explicit absolute tolerance, returning the full
/// quadrature record.
pub fn delta_s_tol(alpha: f64, theta: f64, tol: f64) -> Result<QuadResult> {
    if !alpha.is_finite() || !theta.is_finite() {
        return Err(Error::domain(format!(
            "delta requires finite arguments, got ({alpha}, {theta})"
        )));
    }
    let c = (2.0 * alpha).cos();
    let f = |tau: f64| delta_integrand(alpha, c, tau);
    if theta <= FRAC_PI_2 {
        integrate_split_quarter_pi(f, theta, FRAC_PI_2, tol)
    } else {
        Ok(integrate_split_quarter_pi(f, FRAC_PI_2, theta, tol)?.scaled(-1.0))
    }
}

fn near(x: f64, target: f64) -> bool {
    (x - target).abs() <= ANGLE_EPS
}

/// Closed forms of δ at `θ ∈ {0, π/4, π/2, 3π/4, π}` for `α ∈ [0, π]`.
pub fn delta_s_closed(alpha: f64, theta: f64) -> Result<f64> {
    if !(-ANGLE_EPS..=PI + ANGLE_EPS).contains(&alpha) {
        return Err(Error::domain(format!(
            "closed forms need alpha in [0, pi], got {alpha}"
        )));
    }
    let dist = (FRAC_PI_2 - alpha).abs();
    let half = FRAC_PI_2 - dist;
    if near(theta, 0.0) {
        Ok(PI * (FRAC_PI_4 - dist))
    } else if near(theta, FRAC_PI_4) {
        Ok(half * half - PI * PI / 16.0)
    } else if near(theta, FRAC_PI_2) {
        Ok(0.0)
    } else if near(theta, 3.0 * FRAC_PI_4) {
        Ok(PI * PI / 16.0 - half * half)
    } else if near(theta, PI) {
        Ok(PI * (dist - FRAC_PI_4))
    } else {
        Err(Error::domain(format!(
            "no closed form for theta = {theta}; expected one of 0, pi/4, pi/2, 3pi/4, pi"
        )))
    }
}

/// δ on `(π/2, π)²` as `2∫_{3π/4}^{α} arccot(cot ν / cot θ) dν`.
pub fn delta_s_arccot(alpha: f64, theta: f64) -> Result<f64> {
    Ok(delta_s_arccot_tol(alpha, theta, DEFAULT_TOL)?.value)
}

pub fn delta_s_arccot_tol(alpha: f64, theta: f64, tol: f64) -> Result<QuadResult> {
    let open = |x: f64| x > FRAC_PI_2 && x < PI;
    if !open(alpha) || !open(theta) {
        return Err(Error::domain(format!(
            "arccot form needs pi/2 < alpha, theta < pi, got ({alpha}, {theta})"
        )));
    }
    let tan_theta = theta.tan();
    // cot ν / cot θ = tan θ / tan ν
    let f = |nu: f64| arccot(tan_theta / nu.tan());
    Ok(quad(f, 3.0 * FRAC_PI_4, alpha, tol / 2.0)?.scaled(2.0))
}

/// Maps `(α, θ)` to the fundamental domain `α ∈ [0, π/2]`, `θ ∈ [0, π/2]`.
/// Returns `(α', θ', sign, k)` with `δ(α, θ) = sign·δ(α', θ') - 2k·δ(α', 0)`.
fn reduce_arguments(alpha: f64, theta: f64) -> (f64, f64, f64, f64) {
    let mut a = alpha.rem_euclid(PI);
    if a > FRAC_PI_2 {
        a = PI - a;
    }
    let mut k = (theta / PI).floor();
    let mut t = theta - k * PI;
    if t >= PI {
        t -= PI;
        k += 1.0;
    }
    if t > FRAC_PI_2 {
        (a, PI - t, -1.0, k)
    } else {
        (a, t, 1.0, k)
    }
}

/// δ for arbitrary real arguments via evenness, π-periodicity in α, the
/// reflection `δ(α, θ) = -δ(α, π - θ)` and linear periodicity in θ.
pub fn delta_s_extended(alpha: f64, theta: f64) -> Result<f64> {
    Ok(delta_s_extended_tol(alpha, theta, DEFAULT_TOL)?.value)
}

pub fn delta_s_extended_tol(alpha: f64, theta: f64, tol: f64) -> Result<QuadResult> {
    if !alpha.is_finite() || !theta.is_finite() {
        return Err(Error::domain(format!(
            "delta requires finite arguments, got ({alpha}, {theta})"
        )));
    }
    let (a, t, sign, k) = reduce_arguments(alpha, theta);
    let base = delta_s_tol(a, t, tol)?.scaled(sign);
    let d0 = delta_s_closed(a, 0.0)?;
    Ok(QuadResult {
        value: base.value - 2.0 * k * d0,
        ..base
    })
}

/// `δ̃(α, θ) = δ(α, θ) + (2θ/π - 1)·δ(α, 0)`.
pub fn delta_s_reduced(alpha: f64, theta: f64) -> Result<f64> {
    Ok(delta_s_reduced_tol(alpha, theta, DEFAULT_TOL)?.value)
}

pub fn delta_s_reduced_tol(alpha: f64, theta: f64, tol: f64) -> Result<QuadResult> {
    let d = delta_s_extended_tol(alpha, theta, tol / 2.0)?;
    let d0 = delta_s_extended_tol(alpha, 0.0, tol / 2.0)?;
    let w = 2.0 * theta / PI - 1.0;
    Ok(QuadResult {
        value: d.value + w * d0.value,
        err_estimate: d.err_estimate + w.abs() * d0.err_estimate,
        evals: d.evals + d0.evals,
        converged: d.converged && d0.converged,
    })
}

/// `∂δ/∂α`.
///
/// On `(0, π/2) × [0, π/2)` and `(π/2, π) × (π/2, π)` this is
/// `2·arccot(cot α · tan θ)`; on the two mixed quadrants the same expression
/// is off by `2π`, and linear periodicity in θ contributes `-2k·∂δ(α,0)/∂α`.
/// Undefined on the lines `α = π/2 + kπ`, and at `α = kπ` when θ is a
/// multiple of π.
pub fn delta_s_dalpha(alpha: f64, theta: f64) -> Result<f64> {
    if !alpha.is_finite() || !theta.is_finite() {
        return Err(Error::domain(format!(
            "derivative requires finite arguments, got ({alpha}, {theta})"
        )));
    }
    let a = alpha.rem_euclid(PI);
    if (a - FRAC_PI_2).abs() <= ANGLE_EPS {
        return Err(Error::domain(format!(
            "delta is not differentiable in alpha at alpha = pi/2 + k pi (alpha = {alpha})"
        )));
    }
    let mut k = (theta / PI).floor();
    let mut t = theta - k * PI;
    if t >= PI {
        t -= PI;
        k += 1.0;
    }
    let lower_alpha = a < FRAC_PI_2;
    // ∂δ(α,0)/∂α is the slope of π(π/4 - |π/2 - α|)
    let slope0 = if lower_alpha { PI } else { -PI };

    if a <= ANGLE_EPS || PI - a <= ANGLE_EPS {
        if t == 0.0 {
            return Err(Error::domain(format!(
                "delta is not differentiable in alpha at alpha = k pi, theta = k pi (alpha = {alpha}, theta = {theta})"
            )));
        }
        // δ is even in α, so the derivative vanishes on α = kπ
        return Ok(0.0);
    }

    let base = 2.0 * arccot(t.tan() / a.tan());
    let lower_theta = t <= FRAC_PI_2;
    let branch = if lower_alpha == lower_theta { 0.0 } else { -2.0 * PI };
    Ok(base + branch - 2.0 * k * slope0)
}

// ---------------------------------------------------------------------------
// Dilogarithm

/// `Li₂(r, t) = -½ ∫₀^r log(1 - 2x cos t + x²) dx / x`.
pub fn dilog2(r: f64, t: f64) -> Result<f64> {
    Ok(dilog2_tol(r, t, DEFAULT_TOL)?.value)
}

pub fn dilog2_tol(r: f64, t: f64, tol: f64) -> Result<QuadResult> {
    if !r.is_finite() || !t.is_finite() {
        return Err(Error::domain(format!(
            "dilogarithm requires finite arguments, got ({r}, {t})"
        )));
    }
    if r == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            err_estimate: 0.0,
            evals: 0,
            converged: true,
        });
    }
    let (s, c) = t.sin_cos();
    let (lo, hi) = if r > 0.0 { (0.0, r) } else { (r, 0.0) };
    if s.abs() < ANGLE_EPS {
        let root = c.signum();
        if root >= lo && root <= hi {
            return Err(Error::domain(format!(
                "log(1 - 2x cos t + x^2) vanishes at x = {root} inside [0, {r}]"
            )));
        }
    }
    let f = |x: f64| {
        let q = x * (x - 2.0 * c);
        if q.abs() < 0.5 {
            let ratio = if q == 0.0 { 1.0 } else { q.ln_1p() / q };
            ratio * (x - 2.0 * c)
        } else {
            let d = x - c;
            (d * d + s * s).ln() / x
        }
    };
    // the integrand peaks where x = cos t
    let res = quad_with_points(f, lo, hi, &[c], tol)?;
    let sign = if r > 0.0 { -0.5 } else { 0.5 };
    Ok(res.scaled(sign))
}

// ---------------------------------------------------------------------------
// Schläfli function

/// Angles of a double-rectangular tetrahedron together with the derived
/// `D = sqrt(cos²α cos²γ - cos²β)` and `X = (sinα sinγ - D)/(sinα sinγ + D)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchlaefliArgs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub d: f64,
    pub x: f64,
}

impl SchlaefliArgs {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        check_orthoscheme_bounds(alpha, beta, gamma)?;
        let (ca, cb, cg) = (alpha.cos(), beta.cos(), gamma.cos());
        let mut d2 = ca * ca * cg * cg - cb * cb;
        // cos(π/2) is not exactly zero in floating point
        if d2 < 0.0 && d2 > -1e-15 {
            d2 = 0.0;
        }
        if d2 < 0.0 {
            return Err(Error::domain(format!(
                "cos^2(alpha) cos^2(gamma) < cos^2(beta): not spherical (D^2 = {d2:e})"
            )));
        }
        let d = d2.sqrt();
        let s = alpha.sin() * gamma.sin();
        if s + d == 0.0 {
            return Err(Error::domain("degenerate orthoscheme: sin(alpha) sin(gamma) + D = 0"));
        }
        Ok(SchlaefliArgs {
            alpha,
            beta,
            gamma,
            d,
            x: (s - d) / (s + d),
        })
    }
}

pub(crate) fn check_orthoscheme_bounds(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    let in_range = |x: f64, hi: f64| (0.0..=hi).contains(&x);
    if !in_range(alpha, FRAC_PI_2) || !in_range(beta, PI) || !in_range(gamma, FRAC_PI_2) {
        return Err(Error::domain(format!(
            "orthoscheme angles need 0 <= alpha, gamma <= pi/2 and 0 <= beta <= pi, got ({alpha}, {beta}, {gamma})"
        )));
    }
    Ok(())
}

/// Schläfli function
/// `S = Σ (-X)ⁿ/n² (cos2nα - cos2nβ + cos2nγ - 1) - α² + β² - γ²`,
/// summed until the geometric tail bound `4|X|ⁿ⁺¹/((n+1)²(1-|X|))` drops
/// below `tol`.
pub fn schlaefli_series(args: &SchlaefliArgs, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let x = args.x;
    if !(x.abs() <= SCHLAEFLI_X_LIMIT) {
        return Err(Error::domain(format!(
            "Schlaefli series needs |X| < 1 (got X = {x}); the Euclidean boundary has no series value"
        )));
    }
    let ax = x.abs();
    let (a2, b2, g2) = (2.0 * args.alpha, 2.0 * args.beta, 2.0 * args.gamma);
    let mut power = 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut n = 1usize;
    loop {
        power *= -x;
        let nf = n as f64;
        let term = power / (nf * nf)
            * ((nf * a2).cos() - (nf * b2).cos() + (nf * g2).cos() - 1.0);
        // Kahan summation: the alternating terms nearly cancel when X ~ 1
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let next = nf + 1.0;
        let tail = 4.0 * power.abs() * ax / (next * next * (1.0 - ax));
        if tail < tol {
            break;
        }
        if n >= SCHLAEFLI_MAX_TERMS {
            return Err(Error::NonConvergence(QuadResult {
                value: sum,
                err_estimate: tail,
                evals: n,
                converged: false,
            }));
        }
        n += 1;
    }
    Ok(sum - args.alpha.powi(2) + args.beta.powi(2) - args.gamma.powi(2))
}

/// Value of the Schläfli series on `|X| = 1`, i.e. at the Euclidean
/// boundary, summed in closed form with
/// `Σ (-1)ⁿ cos(2nx)/n² = x² - π²/12` for `|x| ≤ π/2`.
pub fn schlaefli_boundary(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    check_orthoscheme_bounds(alpha, beta, gamma)?;
    let fourier = |x: f64| {
        let r = x - PI * (x / PI).round();
        r * r - PI * PI / 12.0
    };
    let sum = fourier(alpha) - fourier(beta) + fourier(gamma) - fourier(0.0);
    Ok(sum - alpha * alpha + beta * beta - gamma * gamma)
}
