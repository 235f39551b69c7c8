//! Named, reproducible identity checks. Each check samples inputs from a
//! seeded generator (or a fixed grid), evaluates an identity by two
//! independent routes and reports the largest residual.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lambert::{
    classify, edge_lengths_from_abc, edge_lengths_spherical, principal_spherical, volume_spherical,
    volume_spherical_integral_with, CubeAngles, IntegralRoute,
};
use crate::orthoscheme::{
    biquadratic_residual, classify_orthoscheme, cosine_rule_residual, orthoscheme_edges,
    volume_orthoscheme_integral, volume_orthoscheme_schlaefli, volume_via_delta, OrthoschemeAngles,
};
use crate::quadrature::quad;
use crate::specfun::{
    delta_s_arccot_tol, delta_s_closed, delta_s_reduced_tol, delta_s_tol, dilog2_tol,
};

/// Distance kept from every domain boundary when sampling.
pub const MARGIN: f64 = 0.05;

pub const DEFAULT_SEED: u64 = 42;

/// One sample whose residual exceeded the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub inputs: Vec<f64>,
    pub residual: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub sample_count: usize,
    pub passed: bool,
    pub details: Vec<Failure>,
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    max_residual: f64,
    samples: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tally {
            name,
            tolerance,
            max_residual: 0.0,
            samples: 0,
            failures: Vec::new(),
        }
    }

    /// Records one residual; errors and NaN count as infinite residuals.
    fn record(&mut self, inputs: &[f64], note: &str, residual: Result<f64>) {
        let (r, note) = match residual {
            Ok(r) if !r.is_nan() => (r.abs(), note.to_string()),
            Ok(_) => (f64::INFINITY, format!("{note}: NaN")),
            Err(e) => (f64::INFINITY, format!("{note}: {e}")),
        };
        self.max_residual = self.max_residual.max(r);
        if r > self.tolerance {
            self.failures.push(Failure {
                inputs: inputs.to_vec(),
                residual: r,
                note,
            });
        }
    }

    fn next_sample(&mut self) {
        self.samples += 1;
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            name: self.name.to_string(),
            max_residual: self.max_residual,
            tolerance: self.tolerance,
            sample_count: self.samples,
            passed: self.failures.is_empty() && self.max_residual <= self.tolerance,
            details: self.failures,
        }
    }
}

fn require_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        Err(Error::domain("a check needs at least one sample"))
    } else {
        Ok(())
    }
}

/// Quadrature tolerance for a check with residual threshold `threshold`:
/// two orders of magnitude below it, tightened further by the caller.
fn quad_tol(threshold: f64, user: Option<f64>) -> f64 {
    let base = threshold * 1e-2;
    match user {
        Some(t) if t > 0.0 => base.min(t),
        _ => base,
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Random spherical Lambert cube, each angle in `(π/2 + m, π - m)`.
pub fn random_spherical_cube(rng: &mut ChaCha8Rng, margin: f64) -> CubeAngles {
    let mut draw = || uniform(rng, FRAC_PI_2 + margin, PI - margin);
    let (a, b, c) = (draw(), draw(), draw());
    classify(a, b, c).expect("sampled inside the spherical box")
}

/// Random spherical orthoscheme with `α, γ ∈ (m, π/2 - m)` and β at least
/// `m` away from both the Euclidean boundary and π/2.
pub fn random_spherical_orthoscheme(rng: &mut ChaCha8Rng, margin: f64) -> OrthoschemeAngles {
    loop {
        let a = uniform(rng, margin, FRAC_PI_2 - margin);
        let g = uniform(rng, margin, FRAC_PI_2 - margin);
        let b_min = (a.cos() * g.cos()).acos() + margin;
        let b_max = FRAC_PI_2 - margin;
        if b_min < b_max {
            let b = uniform(rng, b_min, b_max);
            return OrthoschemeAngles::new(a, b, g).expect("sampled inside bounds");
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `tan α/tan l_α = tan β/tan l_β = tan γ/tan l_γ = T`, relative.
pub fn check_tangent_rule(samples: usize, seed: u64) -> Result<CheckReport> {
    require_samples(samples)?;
    let mut tally = Tally::new("tangent_rule", 1e-10);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let q = random_spherical_cube(&mut rng, MARGIN);
        tally.next_sample();
        let res = tangent_residual(&q);
        tally.record(&q.as_array(), "max |tan x / tan l_x - T| / |T|", res);
    }
    Ok(tally.finish())
}

fn tangent_residual(q: &CubeAngles) -> Result<f64> {
    let pd = principal_spherical(q)?;
    // lengths from A, B, C, so the rule is not satisfied by construction
    let e = edge_lengths_from_abc(&pd)?;
    let mut worst: f64 = 0.0;
    for (x, l) in q.as_array().iter().zip(e.as_array()) {
        worst = worst.max((x.tan() / l.tan() - pd.t).abs() / pd.t.abs());
    }
    Ok(worst)
}

/// `(sin α/sin l_α)(sin β/sin l_β)(cos γ/cos l_γ) = -1` and its two cyclic
/// variants.
pub fn check_sine_cosine(samples: usize, seed: u64) -> Result<CheckReport> {
    require_samples(samples)?;
    let mut tally = Tally::new("sine_cosine_rule", 1e-10);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let q = random_spherical_cube(&mut rng, MARGIN);
        tally.next_sample();
        let products = sine_cosine_products(&q);
        for (i, note) in ["cos gamma", "cos alpha", "cos beta"].iter().enumerate() {
            let r = products.clone().map(|p| p[i] + 1.0);
            tally.record(&q.as_array(), note, r);
        }
    }
    Ok(tally.finish())
}

/// The three cyclic products, with the cosine factor on γ, α, β.
pub fn sine_cosine_products(q: &CubeAngles) -> Result<[f64; 3]> {
    let pd = principal_spherical(q)?;
    let e = edge_lengths_spherical(&pd)?;
    let x = q.as_array();
    let l = e.as_array();
    let s = |i: usize| x[i].sin() / l[i].sin();
    let c = |i: usize| x[i].cos() / l[i].cos();
    Ok([s(0) * s(1) * c(2), s(1) * s(2) * c(0), s(2) * s(0) * c(1)])
}

/// The biquadratic for T and the squared Sine-Cosine identity
/// `(T²+L²)(T²+M²)(T²+N²) = (1+L²)(1+M²)(1+N²)T²`, both relative.
pub fn check_principal_identities(samples: usize, seed: u64) -> Result<CheckReport> {
    require_samples(samples)?;
    let mut tally = Tally::new("principal_identities", 1e-10);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let q = random_spherical_cube(&mut rng, MARGIN);
        tally.next_sample();
        let pd = principal_spherical(&q)?;
        tally.record(&q.as_array(), "quartic residual", Ok(pd.quartic_residual()));
        let t2 = pd.t * pd.t;
        let sq = [pd.l, pd.m, pd.n].map(|x| x * x);
        let lhs: f64 = sq.iter().map(|x| t2 + x).product();
        let rhs: f64 = sq.iter().map(|x| 1.0 + x).product::<f64>() * t2;
        tally.record(&q.as_array(), "squared sine-cosine identity", Ok((lhs - rhs) / rhs));
        let (a, b, c) = pd.abc.expect("spherical");
        tally.record(&q.as_array(), "T = -ABC", Ok((pd.t + a * b * c) / pd.t));
    }
    Ok(tally.finish())
}

/// Central differences of the cube volume against `l_x / 2`.
pub fn check_schlaefli_derivative(samples: usize, seed: u64, step: f64) -> Result<CheckReport> {
    require_samples(samples)?;
    if !(step > 0.0 && step < MARGIN) {
        return Err(Error::domain(format!("step must lie in (0, {MARGIN}), got {step}")));
    }
    let mut tally = Tally::new("schlaefli_derivative", 1e-6);
    let tol = 1e-13;
    let mut rng = rng(seed);
    for _ in 0..samples {
        let q = random_spherical_cube(&mut rng, MARGIN);
        tally.next_sample();
        let lengths = principal_spherical(&q).and_then(|pd| edge_lengths_spherical(&pd));
        for i in 0..3 {
            let r = lengths.clone().and_then(|e| {
                let fd = central_difference(q.as_array(), i, step, |x| {
                    volume_spherical(&classify(x[0], x[1], x[2])?, tol)
                })?;
                Ok(fd - 0.5 * e.as_array()[i])
            });
            tally.record(&q.as_array(), ["dV/dalpha", "dV/dbeta", "dV/dgamma"][i], r);
        }
    }
    Ok(tally.finish())
}

/// Central differences of the orthoscheme volume against
/// `(-a/2, +b/2, -c/2)`.
pub fn check_orthoscheme_derivative(samples: usize, seed: u64, step: f64) -> Result<CheckReport> {
    require_samples(samples)?;
    if !(step > 0.0 && step < MARGIN) {
        return Err(Error::domain(format!("step must lie in (0, {MARGIN}), got {step}")));
    }
    let mut tally = Tally::new("orthoscheme_schlaefli_derivative", 1e-6);
    let tol = 1e-13;
    let mut rng = rng(seed);
    for _ in 0..samples {
        let q = random_spherical_orthoscheme(&mut rng, MARGIN);
        tally.next_sample();
        let x = [q.alpha(), q.beta(), q.gamma()];
        let edges = orthoscheme_edges(&classify_orthoscheme(&q), &q);
        for i in 0..3 {
            let r = edges.clone().and_then(|e| {
                let fd = central_difference(x, i, step, |y| {
                    volume_via_delta(&OrthoschemeAngles::new(y[0], y[1], y[2])?, tol)
                })?;
                let expected = [-0.5 * e.a, 0.5 * e.b, -0.5 * e.c][i];
                Ok(fd - expected)
            });
            tally.record(&x, ["dV/dalpha", "dV/dbeta", "dV/dgamma"][i], r);
        }
    }
    Ok(tally.finish())
}

fn central_difference<F>(x: [f64; 3], i: usize, h: f64, f: F) -> Result<f64>
where
    F: Fn([f64; 3]) -> Result<f64>,
{
    let mut up = x;
    let mut down = x;
    up[i] += h;
    down[i] -= h;
    Ok((f(up)? - f(down)?) / (2.0 * h))
}

/// Symmetries, periodicities and the δ̃ bound on a `grid × grid` lattice
/// over `[0, π] × [-π, π]`.
pub fn check_delta_properties(grid: usize, tol: Option<f64>) -> Result<CheckReport> {
    require_samples(grid)?;
    let threshold = 1e-9;
    let qt = quad_tol(threshold, tol);
    let mut tally = Tally::new("delta_properties", threshold);
    let d = |a: f64, t: f64| delta_s_tol(a, t, qt).map(|r| r.value);
    let step = |i: usize, lo: f64, hi: f64| {
        if grid == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * i as f64 / (grid - 1) as f64
        }
    };
    for i in 0..grid {
        let a = step(i, 0.0, PI);
        for j in 0..grid {
            let t = step(j, -PI, PI);
            tally.next_sample();
            let inputs = [a, t];
            let base = d(a, t);
            let d0 = d(a, 0.0);
            let pair = |other: Result<f64>, f: &dyn Fn(f64, f64, f64) -> f64| -> Result<f64> {
                Ok(f(base.clone()?, d0.clone()?, other?))
            };
            tally.record(&inputs, "even in alpha", pair(d(-a, t), &|b, _, o| b - o));
            tally.record(
                &inputs,
                "delta(a,t) + delta(a,-t) = 2 delta(a,0)",
                pair(d(a, -t), &|b, z, o| b + o - 2.0 * z),
            );
            tally.record(&inputs, "alpha -> pi - alpha", pair(d(PI - a, t), &|b, _, o| b - o));
            tally.record(&inputs, "theta -> pi - theta", pair(d(a, PI - t), &|b, _, o| b + o));
            tally.record(&inputs, "pi-periodic in alpha", pair(d(a + PI, t), &|b, _, o| b - o));
            tally.record(
                &inputs,
                "linear periodicity in theta",
                pair(d(a, t + PI), &|b, z, o| o - (b - 2.0 * z)),
            );
            let bound = delta_s_reduced_tol(a, t, qt)
                .map(|r| (r.value.abs() - PI * PI / 4.0).max(0.0));
            tally.record(&inputs, "|reduced delta| <= pi^2/4", bound);
        }
    }
    Ok(tally.finish())
}

/// `delta_s` against the closed forms at θ ∈ {0, π/4, π/2, 3π/4, π}.
pub fn check_td1_closed_forms(samples: usize, seed: u64, tol: Option<f64>) -> Result<CheckReport> {
    require_samples(samples)?;
    let threshold = 1e-9;
    let qt = quad_tol(threshold, tol);
    let mut tally = Tally::new("delta_closed_forms", threshold);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let a = uniform(&mut rng, 0.0, PI);
        tally.next_sample();
        for (k, note) in ["theta = 0", "theta = pi/4", "theta = pi/2", "theta = 3pi/4", "theta = pi"]
            .iter()
            .enumerate()
        {
            let t = k as f64 * FRAC_PI_4;
            let r = delta_s_tol(a, t, qt).and_then(|q| Ok(q.value - delta_s_closed(a, t)?));
            tally.record(&[a, t], note, r);
        }
    }
    Ok(tally.finish())
}

/// `delta_s` against the arccot representation on `(π/2, π)²`.
pub fn check_p2_arccot(samples: usize, seed: u64, tol: Option<f64>) -> Result<CheckReport> {
    require_samples(samples)?;
    let threshold = 1e-9;
    let qt = quad_tol(threshold, tol);
    let mut tally = Tally::new("delta_arccot_form", threshold);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let a = uniform(&mut rng, FRAC_PI_2 + MARGIN, PI - MARGIN);
        let t = uniform(&mut rng, FRAC_PI_2 + MARGIN, PI - MARGIN);
        tally.next_sample();
        let r = delta_s_tol(a, t, qt)
            .and_then(|d| Ok(d.value - delta_s_arccot_tol(a, t, qt)?.value));
        tally.record(&[a, t], "delta vs arccot form", r);
    }
    Ok(tally.finish())
}

/// `δ(α,θ) - δ(α,π/4) = Li₂(r, π/2) - Li₂(r, 2α)` with `r = tan(π/4 - θ)`,
/// for `θ ∈ (-π/4, 3π/4)`.
pub fn check_dilog_relation(samples: usize, seed: u64, tol: Option<f64>) -> Result<CheckReport> {
    require_samples(samples)?;
    let threshold = 1e-9;
    let qt = quad_tol(threshold, tol);
    let mut tally = Tally::new("dilogarithm_relation", threshold);
    let mut rng = rng(seed);
    for _ in 0..samples {
        // α away from 0, π/2, π, where Li₂(r, 2α) is singular for |r| ≥ 1
        let quarter = uniform(&mut rng, MARGIN, FRAC_PI_2 - MARGIN);
        let a = if rng.random_bool(0.5) { quarter } else { quarter + FRAC_PI_2 };
        let t = uniform(&mut rng, -FRAC_PI_4 + 1e-3, 3.0 * FRAC_PI_4 - 1e-3);
        tally.next_sample();
        tally.record(&[a, t], "dilogarithm relation", dilog_residual(a, t, qt));
    }
    Ok(tally.finish())
}

/// Residual of the dilogarithm relation at one point.
pub fn dilog_residual(alpha: f64, theta: f64, tol: f64) -> Result<f64> {
    let r = (FRAC_PI_4 - theta).tan();
    let lhs = delta_s_tol(alpha, theta, tol / 2.0)?.value - delta_s_closed(alpha.rem_euclid(PI), FRAC_PI_4)?;
    let rhs = dilog2_tol(r, FRAC_PI_2, tol / 4.0)?.value - dilog2_tol(r, 2.0 * alpha, tol / 4.0)?.value;
    Ok(lhs - rhs)
}

/// `δ(α, atan(tanh θ)) - δ(α, 0) = -∫₀^θ log(1 - cos2α / cosh2σ) dσ`.
pub fn check_lobachevsky_relation(samples: usize, seed: u64, tol: Option<f64>) -> Result<CheckReport> {
    require_samples(samples)?;
    let threshold = 1e-9;
    let qt = quad_tol(threshold, tol);
    let mut tally = Tally::new("lobachevsky_relation", threshold);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let a = uniform(&mut rng, MARGIN, PI - MARGIN);
        let t = uniform(&mut rng, 0.0, 2.0);
        tally.next_sample();
        tally.record(&[a, t], "integrated relation", lobachevsky_residual(a, t, qt));
    }
    Ok(tally.finish())
}

/// Residual of the integrated Lobachevsky relation at one point.
pub fn lobachevsky_residual(alpha: f64, theta: f64, tol: f64) -> Result<f64> {
    let lhs = delta_s_tol(alpha, theta.tanh().atan(), tol / 3.0)?.value
        - delta_s_tol(alpha, 0.0, tol / 3.0)?.value;
    let s2 = alpha.sin().powi(2);
    // 1 - cos2α/cosh2σ = 2(sinh²σ + sin²α) / cosh2σ
    let f = |sigma: f64| (2.0 * (sigma.sinh().powi(2) + s2)).ln() - (2.0 * sigma).cosh().ln();
    let rhs = -quad(f, 0.0, theta, tol / 3.0)?.value;
    Ok(lhs - rhs)
}

/// Cube: δ-decomposition vs the improper integral by both evaluation paths.
/// Orthoscheme: series vs δ-form vs integral.
pub fn check_volume_routes(samples: usize, seed: u64, tol: Option<f64>) -> Result<CheckReport> {
    require_samples(samples)?;
    let threshold = 1e-8;
    let qt = quad_tol(threshold, tol);
    let mut tally = Tally::new("volume_routes", threshold);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let q = random_spherical_cube(&mut rng, MARGIN);
        tally.next_sample();
        let v = volume_spherical(&q, qt);
        for (route, note) in [
            (IntegralRoute::Substituted, "cube: delta vs substituted integral"),
            (IntegralRoute::Ray, "cube: delta vs integral over the ray"),
        ] {
            let r = v.clone().and_then(|v| Ok(v - volume_spherical_integral_with(&q, qt, route)?.value));
            tally.record(&q.as_array(), note, r);
        }

        let o = random_spherical_orthoscheme(&mut rng, MARGIN);
        let x = [o.alpha(), o.beta(), o.gamma()];
        let d = volume_via_delta(&o, qt);
        let s = d.clone().and_then(|d| Ok(d - volume_orthoscheme_schlaefli(&o, qt)?));
        tally.record(&x, "orthoscheme: delta vs series", s);
        let i = d.and_then(|d| Ok(d - volume_orthoscheme_integral(&o, qt)?));
        tally.record(&x, "orthoscheme: delta vs integral", i);
    }
    Ok(tally.finish())
}

/// Cosine Rule, the biquadratic for T and `cos²x = T²/(T² + tan²x)` for the
/// orthoscheme edges.
pub fn check_orthoscheme_rules(samples: usize, seed: u64) -> Result<CheckReport> {
    require_samples(samples)?;
    let mut tally = Tally::new("orthoscheme_rules", 1e-10);
    let mut rng = rng(seed);
    for _ in 0..samples {
        let o = random_spherical_orthoscheme(&mut rng, MARGIN);
        tally.next_sample();
        let x = [o.alpha(), o.beta(), o.gamma()];
        let data = classify_orthoscheme(&o);
        let edges = orthoscheme_edges(&data, &o);
        tally.record(&x, "cosine rule", edges.clone().map(|e| cosine_rule_residual(&o, &e)));
        tally.record(&x, "biquadratic", biquadratic_residual(&data, &o));
        let t2 = data.t.map(|t| t * t).unwrap_or(f64::NAN);
        for (k, note) in ["cos^2 a", "cos^2 b", "cos^2 c"].iter().enumerate() {
            let r = edges.clone().map(|e| {
                let (angle, len) = [(x[0], e.a), (x[1], e.b), (x[2], e.c)][k];
                len.cos().powi(2) - t2 / (t2 + angle.tan().powi(2))
            });
            tally.record(&x, note, r);
        }
    }
    Ok(tally.finish())
}

/// The checks run by [`run_all`], in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    TangentRule,
    SineCosine,
    PrincipalIdentities,
    SchlaefliDerivative,
    OrthoschemeDerivative,
    DeltaProperties,
    Td1ClosedForms,
    P2Arccot,
    DilogRelation,
    LobachevskyRelation,
    VolumeRoutes,
    OrthoschemeRules,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::TangentRule,
        Check::SineCosine,
        Check::PrincipalIdentities,
        Check::SchlaefliDerivative,
        Check::OrthoschemeDerivative,
        Check::DeltaProperties,
        Check::Td1ClosedForms,
        Check::P2Arccot,
        Check::DilogRelation,
        Check::LobachevskyRelation,
        Check::VolumeRoutes,
        Check::OrthoschemeRules,
    ];

    /// Runs the check with its default sample count. `tol` can only tighten
    /// the quadrature tolerance a check uses internally.
    pub fn run(self, seed: u64, tol: Option<f64>) -> Result<CheckReport> {
        match self {
            Check::TangentRule => check_tangent_rule(50, seed),
            Check::SineCosine => check_sine_cosine(50, seed),
            Check::PrincipalIdentities => check_principal_identities(50, seed),
            Check::SchlaefliDerivative => check_schlaefli_derivative(10, seed, 1e-4),
            Check::OrthoschemeDerivative => check_orthoscheme_derivative(10, seed, 1e-4),
            Check::DeltaProperties => check_delta_properties(50, tol),
            Check::Td1ClosedForms => check_td1_closed_forms(20, seed, tol),
            Check::P2Arccot => check_p2_arccot(20, seed, tol),
            Check::DilogRelation => check_dilog_relation(20, seed, tol),
            Check::LobachevskyRelation => check_lobachevsky_relation(20, seed, tol),
            Check::VolumeRoutes => check_volume_routes(20, seed, tol),
            Check::OrthoschemeRules => check_orthoscheme_rules(20, seed),
        }
    }
}

/// Every check with default parameters, sequentially.
pub fn run_all(seed: u64, tol: Option<f64>) -> Result<Vec<CheckReport>> {
    Check::ALL.iter().map(|c| c.run(seed, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples_is_an_error() {
        assert!(check_tangent_rule(0, 42).is_err());
        assert!(check_delta_properties(0, None).is_err());
        assert!(check_schlaefli_derivative(3, 42, 0.0).is_err());
    }

    #[test]
    fn known_cube_has_unit_ratios() {
        let q = classify(2.0 * PI / 3.0, 2.0 * PI / 3.0, 3.0 * FRAC_PI_4).unwrap();
        let pd = principal_spherical(&q).unwrap();
        let e = edge_lengths_spherical(&pd).unwrap();
        for (x, l) in q.as_array().iter().zip(e.as_array()) {
            assert!((x.tan() / l.tan() + 1.0).abs() < 1e-14);
        }
        assert!(tangent_residual(&q).unwrap() < 1e-14);
    }

    #[test]
    fn sine_cosine_products_are_negative_and_symmetric() {
        let x = 2.2;
        let q = classify(x, x, x).unwrap();
        let p = sine_cosine_products(&q).unwrap();
        assert!(p.iter().all(|v| *v < 0.0));
        assert!((p[0] - p[1]).abs() < 1e-15 && (p[1] - p[2]).abs() < 1e-15);
        let report = check_sine_cosine(50, 42).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn checks_are_deterministic() {
        let a = check_volume_routes(3, 7, None).unwrap();
        let b = check_volume_routes(3, 7, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn relation_residuals_at_reference_points() {
        assert!(dilog_residual(1.0, 0.4, 1e-11).unwrap().abs() < 1e-9);
        assert_eq!(dilog_residual(1.0, FRAC_PI_4, 1e-11).unwrap(), 0.0);
        assert!(dilog_residual(1.0, -FRAC_PI_4 + 1e-3, 1e-11).unwrap().abs() < 1e-8);
        assert!(dilog_residual(1.0, 3.0 * FRAC_PI_4 - 1e-3, 1e-11).unwrap().abs() < 1e-8);

        assert_eq!(lobachevsky_residual(1.2, 0.0, 1e-11).unwrap(), 0.0);
        assert!(lobachevsky_residual(FRAC_PI_4, 1.3, 1e-11).unwrap().abs() < 1e-12);
        assert!(lobachevsky_residual(1.2, 0.8, 1e-11).unwrap().abs() < 1e-9);
        // θ̃ = atan(tanh 0.8)
        assert!((0.8f64.tanh().atan() - 0.586_179_695_414_55).abs() < 1e-13);
    }

    #[test]
    fn failures_carry_inputs() {
        let mut t = Tally::new("demo", 1e-3);
        t.next_sample();
        t.record(&[1.0, 2.0], "ok", Ok(1e-4));
        t.record(&[3.0, 4.0], "bad", Ok(0.5));
        t.record(&[5.0, 6.0], "nan", Ok(f64::NAN));
        let r = t.finish();
        assert!(!r.passed);
        assert_eq!(r.details.len(), 2);
        assert_eq!(r.details[0].inputs, vec![3.0, 4.0]);
        assert!(r.max_residual.is_infinite());
    }

    #[test]
    fn full_suite_passes_with_seed_42() {
        for report in run_all(DEFAULT_SEED, Some(1e-8)).unwrap() {
            assert!(report.passed, "{}: {:e} > {:e}; {:?}", report.name, report.max_residual, report.tolerance, report.details.first());
        }
    }
}
