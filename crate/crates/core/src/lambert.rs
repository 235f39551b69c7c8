//! Lambert cubes Q(α, β, γ): classification, principal parameter, edge
//! lengths and volume.
//!
//! A Lambert cube has dihedral angles α, β, γ on three mutually skew edges
//! and right angles on the other nine. It is spherical when all three
//! essential angles lie in (π/2, π) and hyperbolic when they lie in (0, π/2).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semiinfinite, QuadResult, Tail};
use crate::specfun::{delta_cap_tol, delta_s_tol, integrate_split_quarter_pi};

/// Essential angles closer than this to π/2 are rejected so that their
/// tangents stay finite.
pub const RIGHT_ANGLE_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Spherical,
    Hyperbolic,
}

impl Geometry {
    pub fn as_str(self) -> &'static str {
        match self {
            Geometry::Spherical => "spherical",
            Geometry::Hyperbolic => "hyperbolic",
        }
    }
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spherical" | "s" => Ok(Geometry::Spherical),
            "hyperbolic" | "h" => Ok(Geometry::Hyperbolic),
            _ => Err(Error::domain(format!(
                "unknown geometry '{s}', expected 'spherical' or 'hyperbolic'"
            ))),
        }
    }
}

/// Validated essential angles of a Lambert cube. Only [`classify`] builds
/// these, so every value satisfies the bounds of its geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeAngles {
    alpha: f64,
    beta: f64,
    gamma: f64,
    geometry: Geometry,
}

impl CubeAngles {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Sorts a triple into the spherical or hyperbolic box.
pub fn classify(alpha: f64, beta: f64, gamma: f64) -> Result<CubeAngles> {
    let angles = [alpha, beta, gamma];
    if angles.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain(format!(
            "angles must be finite, got ({alpha}, {beta}, {gamma})"
        )));
    }
    let spherical = |x: f64| x > FRAC_PI_2 + RIGHT_ANGLE_GUARD && x < PI;
    let hyperbolic = |x: f64| x > 0.0 && x < FRAC_PI_2 - RIGHT_ANGLE_GUARD;
    let geometry = if angles.iter().all(|&x| spherical(x)) {
        Geometry::Spherical
    } else if angles.iter().all(|&x| hyperbolic(x)) {
        Geometry::Hyperbolic
    } else {
        return Err(Error::domain(format!(
            "({alpha}, {beta}, {gamma}) is neither spherical (all in (pi/2, pi)) nor hyperbolic (all in (0, pi/2))"
        )));
    };
    Ok(CubeAngles {
        alpha,
        beta,
        gamma,
        geometry,
    })
}

/// The principal parameter and the quantities derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalData {
    pub geometry: Geometry,
    /// `tan α`, `tan β`, `tan γ`.
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// `(L² + M² + N² + 1) / 2`.
    pub p: f64,
    /// `T = tan θ`; negative for spherical cubes, positive for hyperbolic.
    pub t: f64,
    pub theta: f64,
    /// `(A, B, C)`; only defined for spherical cubes.
    pub abc: Option<(f64, f64, f64)>,
}

impl PrincipalData {
    /// `|T⁴ ± 2pT² - L²M²N²| / (1 + L²M²N²)`, the relative residual of the
    /// defining biquadratic (`+` spherical, `-` hyperbolic).
    pub fn quartic_residual(&self) -> f64 {
        let q = (self.l * self.m * self.n).powi(2);
        let y = self.t * self.t;
        let sign = match self.geometry {
            Geometry::Spherical => 1.0,
            Geometry::Hyperbolic => -1.0,
        };
        (y * y + sign * 2.0 * self.p * y - q).abs() / (1.0 + q)
    }
}

fn tangents(angles: &CubeAngles) -> (f64, f64, f64, f64, f64) {
    let (l, m, n) = (angles.alpha.tan(), angles.beta.tan(), angles.gamma.tan());
    let p = 0.5 * (l * l + m * m + n * n + 1.0);
    let q = (l * m * n).powi(2);
    (l, m, n, p, q)
}

/// Spherical principal parameter: the negative root of
/// `T⁴ + 2pT² - L²M²N² = 0`, with `θ = π + atan T ∈ (π/2, π)`.
pub fn principal_spherical(angles: &CubeAngles) -> Result<PrincipalData> {
    if angles.geometry != Geometry::Spherical {
        return Err(Error::domain("principal_spherical needs a spherical cube"));
    }
    let (l, m, n, p, q) = tangents(angles);
    // T² = -p + sqrt(p² + q), written without the cancellation
    let mut y = q / (p + (p * p + q).sqrt());
    y -= (y * y + 2.0 * p * y - q) / (2.0 * (y + p));
    let t = -y.sqrt();
    let mut pd = PrincipalData {
        geometry: Geometry::Spherical,
        l,
        m,
        n,
        p,
        t,
        theta: PI + t.atan(),
        abc: None,
    };
    pd.abc = Some(abc(&pd)?);
    Ok(pd)
}

/// Hyperbolic principal parameter: `T² = p + sqrt(p² + L²M²N²)`,
/// `θ = atan T ∈ (π/4, π/2)`.
pub fn principal_hyperbolic(angles: &CubeAngles) -> Result<PrincipalData> {
    if angles.geometry != Geometry::Hyperbolic {
        return Err(Error::domain("principal_hyperbolic needs a hyperbolic cube"));
    }
    let (l, m, n, p, q) = tangents(angles);
    let mut y = p + (p * p + q).sqrt();
    y -= (y * y - 2.0 * p * y - q) / (2.0 * (y - p));
    let t = y.sqrt();
    Ok(PrincipalData {
        geometry: Geometry::Hyperbolic,
        l,
        m,
        n,
        p,
        t,
        theta: t.atan(),
        abc: None,
    })
}

/// Principal data for either geometry.
pub fn principal(angles: &CubeAngles) -> Result<PrincipalData> {
    match angles.geometry {
        Geometry::Spherical => principal_spherical(angles),
        Geometry::Hyperbolic => principal_hyperbolic(angles),
    }
}

/// Positive roots of
/// `A² = (T²+M²)/(1+N²)`, `B² = (T²+N²)/(1+L²)`, `C² = (T²+L²)/(1+M²)`.
pub fn abc(pd: &PrincipalData) -> Result<(f64, f64, f64)> {
    if pd.geometry != Geometry::Spherical {
        return Err(Error::domain("A, B, C are only defined for spherical cubes"));
    }
    let t2 = pd.t * pd.t;
    let (l2, m2, n2) = (pd.l * pd.l, pd.m * pd.m, pd.n * pd.n);
    Ok((
        ((t2 + m2) / (1.0 + n2)).sqrt(),
        ((t2 + n2) / (1.0 + l2)).sqrt(),
        ((t2 + l2) / (1.0 + m2)).sqrt(),
    ))
}

/// Parameters `a, b, c > 1` of the Euclidean model of a spherical cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanRealization {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

pub fn euclidean_realization(a: f64, b: f64, c: f64) -> Result<EuclideanRealization> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(Error::domain(format!(
            "A, B, C must be positive, got ({a}, {b}, {c})"
        )));
    }
    Ok(EuclideanRealization {
        a: 1.0 + 1.0 / (a * a),
        b: 1.0 + 1.0 / (b * b),
        c: 1.0 + 1.0 / (c * c),
    })
}

/// Lengths of the edges carrying the essential angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeLengths {
    pub l_alpha: f64,
    pub l_beta: f64,
    pub l_gamma: f64,
}

impl EdgeLengths {
    pub fn as_array(&self) -> [f64; 3] {
        [self.l_alpha, self.l_beta, self.l_gamma]
    }
}

/// Edge lengths of a spherical cube from the Tangent Rule
/// `tan α / tan l_α = T`.
pub fn edge_lengths_spherical(pd: &PrincipalData) -> Result<EdgeLengths> {
    if pd.geometry != Geometry::Spherical {
        return Err(Error::domain(
            "edge lengths are only available for spherical cubes",
        ));
    }
    Ok(EdgeLengths {
        l_alpha: (pd.l / pd.t).atan(),
        l_beta: (pd.m / pd.t).atan(),
        l_gamma: (pd.n / pd.t).atan(),
    })
}

/// Edge lengths from `A, B, C`:
/// `tan l_α = √(A²+1)/(AB)`, `tan l_β = √(B²+1)/(BC)`, `tan l_γ = √(C²+1)/(AC)`.
pub fn edge_lengths_from_abc(pd: &PrincipalData) -> Result<EdgeLengths> {
    let Some((a, b, c)) = pd.abc else {
        return Err(Error::domain(
            "edge lengths are only available for spherical cubes",
        ));
    };
    Ok(EdgeLengths {
        l_alpha: ((a * a + 1.0).sqrt() / (a * b)).atan(),
        l_beta: ((b * b + 1.0).sqrt() / (b * c)).atan(),
        l_gamma: ((c * c + 1.0).sqrt() / (a * c)).atan(),
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must be positive, got {tol}")))
    }
}

/// Weights of `δ(α,θ) + δ(β,θ) + δ(γ,θ) - 2δ(π/2,θ) - δ(0,θ)`.
fn decomposition(angles: &CubeAngles) -> [(f64, f64); 5] {
    [
        (angles.alpha, 1.0),
        (angles.beta, 1.0),
        (angles.gamma, 1.0),
        (FRAC_PI_2, -2.0),
        (0.0, -1.0),
    ]
}

/// Volume of a spherical cube as
/// `¼(δ(α,θ) + δ(β,θ) + δ(γ,θ) - 2δ(π/2,θ) - δ(0,θ))`.
pub fn volume_spherical(angles: &CubeAngles, tol: f64) -> Result<f64> {
    Ok(volume_spherical_estimate(angles, tol)?.value)
}

/// [`volume_spherical`] with the accumulated error estimate.
pub fn volume_spherical_estimate(angles: &CubeAngles, tol: f64) -> Result<QuadResult> {
    check_tol(tol)?;
    let pd = principal_spherical(angles)?;
    // the weights sum to 6 in absolute value, scaled by 1/4
    let each = tol * 4.0 / 6.0;
    let mut out = QuadResult {
        value: 0.0,
        err_estimate: 0.0,
        evals: 0,
        converged: true,
    };
    for (x, w) in decomposition(angles) {
        let r = delta_s_tol(x, pd.theta, each)?;
        out.value += w * r.value;
        out.err_estimate += w.abs() * r.err_estimate;
        out.evals += r.evals;
        out.converged &= r.converged;
    }
    out.value *= 0.25;
    out.err_estimate *= 0.25;
    Ok(out)
}

/// How [`volume_spherical_integral_with`] evaluates the improper integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegralRoute {
    /// `t = tan τ`, leaving a single finite integral over `(θ, π/2)`.
    #[default]
    Substituted,
    /// The half-line `(-∞, T]` compactified directly.
    Ray,
}

/// Volume of a spherical cube as the improper integral
/// `¼∫_{-∞}^T log[(t²+L²)(t²+M²)(t²+N²) / ((1+L²)(1+M²)(1+N²)t²)] dt/(t²-1)`.
pub fn volume_spherical_integral(angles: &CubeAngles, tol: f64) -> Result<f64> {
    Ok(volume_spherical_integral_with(angles, tol, IntegralRoute::Substituted)?.value)
}

pub fn volume_spherical_integral_with(
    angles: &CubeAngles,
    tol: f64,
    route: IntegralRoute,
) -> Result<QuadResult> {
    check_tol(tol)?;
    let pd = principal_spherical(angles)?;
    match route {
        IntegralRoute::Substituted => substituted_integral(angles, &pd, tol),
        IntegralRoute::Ray => ray_integral(&pd, tol),
    }
}

/// After `t = tan τ` the integrand becomes
/// `[Σ log(1 - cᵢu) - 2 log(1 + u) - log(1 - u)] / u` with `u = cos 2τ`,
/// `cᵢ = cos 2αᵢ`, integrated over `(θ, π/2)`.
fn substituted_integral(angles: &CubeAngles, pd: &PrincipalData, tol: f64) -> Result<QuadResult> {
    let cs = angles.as_array().map(|a| (2.0 * a).cos());
    let angs = angles.as_array();
    let f = |tau: f64| {
        let u = (2.0 * tau).cos();
        if u.abs() < 1e-6 {
            // Σ over the five weighted terms of -c - c²u/2 - c³u²/3
            let series = |c: f64| -c * (1.0 + u * c * (0.5 + u * c / 3.0));
            let s: f64 = cs.iter().map(|&c| series(c)).sum();
            return s - 2.0 * series(-1.0) - series(1.0);
        }
        let mut num = 0.0;
        for (&c, &a) in cs.iter().zip(&angs) {
            num += if c * u < 0.5 {
                (-c * u).ln_1p()
            } else {
                let (s1, s2) = ((a + tau).sin(), (a - tau).sin());
                (s1 * s1 + s2 * s2).ln()
            };
        }
        // log(1 + u) = log(2cos²τ), log(1 - u) = log(2sin²τ)
        let (s, c) = tau.sin_cos();
        num -= 2.0 * (2.0 * c * c).ln() + (2.0 * s * s).ln();
        num / u
    };
    Ok(integrate_split_quarter_pi(f, FRAC_PI_2, pd.theta, 4.0 * tol)?.scaled(-0.25))
}

/// Direct evaluation over `(-∞, T]`. With `w = t² - 1` and
/// `kᵢ = 1/(1 + Lᵢ²)` the integrand is `[Σ log(1 + kᵢw) - log(1 + w)] / w`.
fn ray_integral(pd: &PrincipalData, tol: f64) -> Result<QuadResult> {
    let ks = [pd.l, pd.m, pd.n].map(|x| 1.0 / (1.0 + x * x));
    let f = |t: f64| {
        let w = (t - 1.0) * (t + 1.0);
        if w.abs() < 1e-5 {
            let series = |k: f64| k * (1.0 - k * w * (0.5 - k * w * (1.0 / 3.0 - 0.25 * k * w)));
            let s: f64 = ks.iter().map(|&k| series(k)).sum();
            return s - series(1.0);
        }
        let s: f64 = ks.iter().map(|&k| (k * w).ln_1p()).sum();
        (s - w.ln_1p()) / w
    };
    Ok(integrate_semiinfinite(f, pd.t, Tail::Below, 4.0 * tol)?.scaled(0.25))
}

/// Volume of a hyperbolic cube as
/// `¼(Δ(α,θ) + Δ(β,θ) + Δ(γ,θ) - 2Δ(π/2,θ) - Δ(0,θ))`.
pub fn volume_hyperbolic(angles: &CubeAngles, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let pd = principal_hyperbolic(angles)?;
    let each = tol.min(1e-12) / 6.0;
    let v: f64 = decomposition(angles)
        .iter()
        .map(|&(x, w)| w * delta_cap_tol(x, pd.theta, each))
        .sum();
    Ok(0.25 * v)
}

/// Volume in either geometry.
pub fn volume(angles: &CubeAngles, tol: f64) -> Result<f64> {
    match angles.geometry {
        Geometry::Spherical => volume_spherical(angles, tol),
        Geometry::Hyperbolic => volume_hyperbolic(angles, tol),
    }
}

/// The family `cos²α + cos²β + cos²γ = 1`: returns the induced
/// `γ ∈ (π/2, π)` and the closed-form volume
/// `¼(π²/2 - (π-α)² - (π-β)² - (π-γ)²)`.
pub fn volume_special_family(alpha: f64, beta: f64, tol: f64) -> Result<(f64, f64)> {
    check_tol(tol)?;
    let open = |x: f64| x > FRAC_PI_2 && x < PI;
    if !open(alpha) || !open(beta) {
        return Err(Error::domain(format!(
            "special family needs pi/2 < alpha, beta < pi, got ({alpha}, {beta})"
        )));
    }
    let rest = 1.0 - alpha.cos().powi(2) - beta.cos().powi(2);
    if rest <= 0.0 {
        return Err(Error::domain(format!(
            "cos^2(alpha) + cos^2(beta) = {} >= 1: no gamma in (pi/2, pi)",
            1.0 - rest
        )));
    }
    let gamma = PI - rest.sqrt().acos();
    let v = 0.25
        * (PI * PI / 2.0 - (PI - alpha).powi(2) - (PI - beta).powi(2) - (PI - gamma).powi(2));
    Ok((gamma, v))
}

/// Closed form for the singular cube `Q(α, β, π)`: `(α + β - π)·π`.
pub fn volume_singular(alpha: f64, beta: f64) -> Result<f64> {
    let open = |x: f64| x > FRAC_PI_2 && x < PI;
    if !open(alpha) || !open(beta) {
        return Err(Error::domain(format!(
            "singular cube needs pi/2 < alpha, beta < pi, got ({alpha}, {beta})"
        )));
    }
    Ok((alpha + beta - PI) * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{delta_s_closed, lobachevsky};
    use std::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-12;

    fn sph(a: f64, b: f64, c: f64) -> CubeAngles {
        let q = classify(a, b, c).unwrap();
        assert_eq!(q.geometry(), Geometry::Spherical);
        q
    }

    fn hyp(a: f64, b: f64, c: f64) -> CubeAngles {
        let q = classify(a, b, c).unwrap();
        assert_eq!(q.geometry(), Geometry::Hyperbolic);
        q
    }

    #[test]
    fn classify_examples() {
        sph(2.0 * PI / 3.0, 2.0 * PI / 3.0, 3.0 * FRAC_PI_4);
        hyp(PI / 3.0, PI / 3.0, FRAC_PI_4);
        assert!(matches!(
            classify(FRAC_PI_2, 2.0 * PI / 3.0, 2.0 * PI / 3.0),
            Err(Error::Domain(_))
        ));
        assert!(classify(1.0, 2.0, 2.0).is_err());
        assert!(classify(FRAC_PI_2 + 1e-10, 2.0, 2.0).is_err());
        assert!(classify(f64::NAN, 2.0, 2.0).is_err());
    }

    #[test]
    fn principal_spherical_examples() {
        let pd = principal_spherical(&sph(2.0 * PI / 3.0, 2.0 * PI / 3.0, 3.0 * FRAC_PI_4)).unwrap();
        assert!((pd.t + 1.0).abs() < 1e-14);
        assert!((pd.theta - 3.0 * FRAC_PI_4).abs() < 1e-14);

        let pd = principal_spherical(&sph(2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0)).unwrap();
        // L² = M² = N² = 3, p = 5: T² = -5 + √52
        let t = -(52f64.sqrt() - 5.0).sqrt();
        assert!((pd.t - t).abs() < 1e-14);
        assert!((pd.t + 1.486_977_656_5).abs() < 1e-10);
        assert!((pd.theta - (PI + t.atan())).abs() < 1e-14);
        assert!((pd.theta - 2.162_830_011_6).abs() < 1e-10);
        assert!(pd.quartic_residual() < 1e-12);
        let (a, b, c) = pd.abc.unwrap();
        assert!((pd.t + a * b * c).abs() < 1e-12 * pd.t.abs());

        assert!(principal_spherical(&hyp(0.5, 0.5, 0.5)).is_err());
    }

    #[test]
    fn principal_hyperbolic_examples() {
        let pd = principal_hyperbolic(&hyp(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4)).unwrap();
        let t2 = 2.0 + 5f64.sqrt();
        assert!((pd.t * pd.t - t2).abs() < 1e-13);
        assert!((pd.theta - t2.sqrt().atan()).abs() < 1e-14);
        assert!((pd.theta - 1.118_517_879_6).abs() < 1e-10);
        assert!(pd.abc.is_none());
        assert!(pd.quartic_residual() < 1e-12);

        let pd = principal_hyperbolic(&hyp(1e-6, 1e-6, 1e-6)).unwrap();
        assert!((pd.theta - FRAC_PI_4).abs() < 1e-9);
        let e = FRAC_PI_2 - 1e-6;
        let pd = principal_hyperbolic(&hyp(e, e, e)).unwrap();
        assert!(pd.t > 1e5 && FRAC_PI_2 - pd.theta < 1e-5);
        assert!(principal_hyperbolic(&sph(2.0, 2.0, 2.0)).is_err());
    }

    #[test]
    fn abc_examples() {
        let pd = principal_spherical(&sph(2.0 * PI / 3.0, 2.0 * PI / 3.0, 3.0 * FRAC_PI_4)).unwrap();
        let (a, b, c) = abc(&pd).unwrap();
        assert!((a * a - 2.0).abs() < 1e-13);
        assert!((b * b - 0.5).abs() < 1e-13);
        assert!((c * c - 1.0).abs() < 1e-13);
        for (x, y, z) in [(2.0, 2.3, 2.6), (1.7, 3.0, 2.2), (3.1, 3.1, 1.6)] {
            let pd = principal_spherical(&sph(x, y, z)).unwrap();
            let (a, b, c) = pd.abc.unwrap();
            let rel = |u: f64, v: f64| (u - v).abs() / u.abs().max(1.0);
            assert!(rel(pd.l * pd.l, c * c * (a * a + 1.0)) < 1e-10);
            assert!(rel(pd.m * pd.m, a * a * (b * b + 1.0)) < 1e-10);
            assert!(rel(pd.n * pd.n, b * b * (c * c + 1.0)) < 1e-10);
        }
        let pd = principal_hyperbolic(&hyp(0.5, 0.5, 0.5)).unwrap();
        assert!(matches!(abc(&pd), Err(Error::Domain(_))));
    }

    #[test]
    fn euclidean_realization_examples() {
        let r = euclidean_realization(1.0, 1.0, 1.0).unwrap();
        assert_eq!((r.a, r.b, r.c), (2.0, 2.0, 2.0));
        let s = 2f64.sqrt();
        let r = euclidean_realization(s, 1.0 / s, 1.0).unwrap();
        assert!((r.a - 1.5).abs() < 1e-15 && (r.b - 3.0).abs() < 1e-14 && r.c == 2.0);
        assert!((euclidean_realization(1e9, 1.0, 1.0).unwrap().a - 1.0).abs() < 1e-15);
        assert!(euclidean_realization(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn edge_length_examples() {
        let q = sph(2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0);
        let pd = principal_spherical(&q).unwrap();
        let e = edge_lengths_spherical(&pd).unwrap();
        let via_abc = edge_lengths_from_abc(&pd).unwrap();
        let t = -(52f64.sqrt() - 5.0).sqrt();
        assert!((e.l_alpha - (-(3f64.sqrt()) / t).atan()).abs() < 1e-14);
        assert!((e.l_alpha - 0.861_384_225).abs() < 1e-9);
        assert_eq!(e.l_alpha, e.l_beta);
        assert_eq!(e.l_beta, e.l_gamma);
        for (u, v) in e.as_array().iter().zip(via_abc.as_array()) {
            assert!((u - v).abs() < 1e-12);
        }

        let q = sph(1.9, 2.4, 2.9);
        let pd = principal_spherical(&q).unwrap();
        let e = edge_lengths_spherical(&pd).unwrap();
        let via_abc = edge_lengths_from_abc(&pd).unwrap();
        for (u, v) in e.as_array().iter().zip(via_abc.as_array()) {
            assert!(*u > 0.0 && *u < FRAC_PI_2);
            assert!((u - v).abs() < 1e-12);
        }
        let prod = q.alpha().sin() / e.l_alpha.sin() * q.beta().sin() / e.l_beta.sin()
            * q.gamma().cos()
            / e.l_gamma.cos();
        assert!((prod + 1.0).abs() < 1e-10);

        let pd = principal_hyperbolic(&hyp(0.5, 0.5, 0.5)).unwrap();
        assert!(edge_lengths_spherical(&pd).is_err());
    }

    #[test]
    fn volume_closed_value() {
        let q = sph(2.0 * PI / 3.0, 2.0 * PI / 3.0, 3.0 * FRAC_PI_4);
        let exact = 31.0 * PI * PI / 576.0;
        assert!((volume_spherical(&q, TOL).unwrap() - exact).abs() < 1e-11);
        for route in [IntegralRoute::Substituted, IntegralRoute::Ray] {
            let v = volume_spherical_integral_with(&q, TOL, route).unwrap().value;
            assert!((v - exact).abs() < 1e-10, "{route:?}: {v}");
        }
    }

    #[test]
    fn routes_agree_on_generic_cube() {
        let q = sph(2.0, 2.3, 2.6);
        let v = volume_spherical(&q, TOL).unwrap();
        // reference value from an independent arbitrary-precision evaluation
        assert!((v - 0.684_351_481_904_33).abs() < 1e-12);
        let s = volume_spherical_integral(&q, TOL).unwrap();
        let r = volume_spherical_integral_with(&q, TOL, IntegralRoute::Ray).unwrap().value;
        assert!((v - s).abs() < 1e-11 && (v - r).abs() < 1e-10);
    }

    #[test]
    fn ray_route_bridges_removable_point() {
        // T > -1 puts t = -1 inside (-∞, T]
        let q = sph(2.9, 2.9, 2.9);
        let pd = principal_spherical(&q).unwrap();
        assert!(pd.t > -1.0);
        let v = volume_spherical(&q, TOL).unwrap();
        let r = volume_spherical_integral_with(&q, TOL, IntegralRoute::Ray).unwrap().value;
        assert!((v - r).abs() < 1e-10);
    }

    #[test]
    fn volume_vanishes_near_right_angles() {
        let mut last = 0.0;
        for eps in [1e-4, 1e-3, 1e-2] {
            let x = FRAC_PI_2 + eps;
            let v = volume_spherical(&sph(x, x, x), TOL).unwrap();
            assert!(v > last);
            last = v;
        }
        let x = FRAC_PI_2 + 1e-3;
        assert!(volume_spherical(&sph(x, x, x), TOL).unwrap() < 0.01);
        let v = volume_spherical_integral(&sph(x, x, x), TOL).unwrap();
        assert!(v.abs() < 0.01);
    }

    #[test]
    fn volume_is_symmetric() {
        let (a, b, c) = (1.8, 2.2, 2.9);
        let base = volume_spherical(&sph(a, b, c), TOL).unwrap();
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            assert!((volume_spherical(&sph(x, y, z), TOL).unwrap() - base).abs() < 1e-10);
        }
    }

    #[test]
    fn hyperbolic_limits() {
        let e = 1e-4;
        let v = volume_hyperbolic(&hyp(e, e, e), TOL).unwrap();
        let limit = 2.0 * lobachevsky(FRAC_PI_4);
        assert!((limit - 0.915_965_594_1).abs() < 1e-10);
        assert!((v - limit).abs() < 1e-3);
        let x = FRAC_PI_2 - 1e-3;
        let v = volume_hyperbolic(&hyp(x, x, x), TOL).unwrap();
        assert!(v > 0.0 && v < 1e-2);
    }

    #[test]
    fn hyperbolic_volume_decreases_in_each_angle() {
        let base = volume_hyperbolic(&hyp(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4), TOL).unwrap();
        assert!(base > 0.0);
        for i in 0..3 {
            let mut up = [FRAC_PI_4; 3];
            let mut down = [FRAC_PI_4; 3];
            up[i] += 0.01;
            down[i] -= 0.01;
            let vu = volume_hyperbolic(&hyp(up[0], up[1], up[2]), TOL).unwrap();
            let vd = volume_hyperbolic(&hyp(down[0], down[1], down[2]), TOL).unwrap();
            assert!(vd > base && base > vu);
        }
    }

    #[test]
    fn special_family_examples() {
        let (g, v) = volume_special_family(2.0 * PI / 3.0, 2.0 * PI / 3.0, TOL).unwrap();
        assert!((g - 3.0 * FRAC_PI_4).abs() < 1e-14);
        assert!((v - 31.0 * PI * PI / 576.0).abs() < 1e-14);
        let (g2, v2) = volume_special_family(2.0 * PI / 3.0, 3.0 * FRAC_PI_4, TOL).unwrap();
        assert!((g2 - 2.0 * PI / 3.0).abs() < 1e-14 && (v2 - v).abs() < 1e-14);
        let x = 0.55 * PI;
        let (g, v) = volume_special_family(x, x, TOL).unwrap();
        let direct = volume_spherical(&sph(x, x, g), TOL).unwrap();
        assert!((v - direct).abs() < 1e-9);
        assert!(matches!(volume_special_family(2.8, 2.8, TOL), Err(Error::Domain(_))));
    }

    #[test]
    fn singular_examples() {
        let v = volume_singular(3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4).unwrap();
        assert!((v - PI * PI / 2.0).abs() < 1e-14);
        let e = 1e-6;
        assert!((volume_singular(FRAC_PI_2 + e, FRAC_PI_2 + e).unwrap() - 2.0 * e * PI).abs() < 1e-15);
        assert!(volume_singular(1.0, 2.0).is_err());
    }

    #[test]
    fn volume_at_gamma_to_pi_tends_to_quarter_of_singular_form() {
        // As γ → π, T → 0 and θ → π, so the volume tends to
        // ¼(δ(α,π) + δ(β,π) + δ(π,π) - 2δ(π/2,π) - δ(0,π)), which the closed
        // forms at θ = π reduce to (α + β - π)π/4.
        let (a, b) = (0.9 * PI, 0.8 * PI);
        let d = |x: f64| delta_s_closed(x, PI).unwrap();
        let limit = 0.25 * (d(a) + d(b) + d(PI) - 2.0 * d(FRAC_PI_2) - d(0.0));
        assert!((limit - (a + b - PI) * PI / 4.0).abs() < 1e-14);
        let v = volume_spherical(&sph(a, b, PI - 1e-4), TOL).unwrap();
        assert!((v - limit).abs() < 2e-3, "{v} vs {limit}");
    }
}
