//! Adaptive one-dimensional quadrature.
//!
//! Globally adaptive bisection driven by a 7-point Gauss / 15-point Kronrod
//! pair. The rule is open: no node ever lands on a segment endpoint, so
//! integrable logarithmic singularities at the ends of the range are handled
//! by repeated bisection without special-casing. Interior singularities must
//! be split out by the caller.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_EVALS: usize = 200_000;

/// Smallest admissible `max_evals`: one application of the base rule.
pub const MIN_EVALS: usize = 15;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evals: usize,
    pub converged: bool,
}

impl QuadResult {
    fn zero() -> Self {
        QuadResult {
            value: 0.0,
            err_estimate: 0.0,
            evals: 0,
            converged: true,
        }
    }

    /// Sums two results as if they covered adjacent ranges.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(self, factor: f64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            ..self
        }
    }
}

/// A definite integral over a finite range. `lower > upper` is allowed and
/// yields the sign-flipped integral.
#[derive(Clone)]
pub struct IntegrationProblem<F> {
    integrand: F,
    lower: f64,
    upper: f64,
    abs_tol: f64,
    max_evals: usize,
    breakpoints: Vec<f64>,
}

impl<F> IntegrationProblem<F>
where
    F: Fn(f64) -> f64,
{
    pub fn new(integrand: F, lower: f64, upper: f64) -> Self {
        IntegrationProblem {
            integrand,
            lower,
            upper,
            abs_tol: DEFAULT_ABS_TOL,
            max_evals: DEFAULT_MAX_EVALS,
            breakpoints: Vec::new(),
        }
    }

    /// Interior points (singularities, kinks) the initial partition must
    /// contain. Points outside the open range are ignored. The tolerance
    /// stays global: error is redistributed freely between the pieces.
    pub fn breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints = points.into_iter().collect();
        self
    }

    pub fn abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn max_evals(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals;
        self
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn tolerance(&self) -> f64 {
        self.abs_tol
    }

    pub fn integrate(&self) -> Result<QuadResult> {
        integrate(self)
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "abs_tol must be positive and finite, got {}",
                self.abs_tol
            )));
        }
        if self.max_evals < MIN_EVALS {
            return Err(Error::InvalidProblem(format!(
                "max_evals must be at least {MIN_EVALS}, got {}",
                self.max_evals
            )));
        }
        if let Some(x) = self.breakpoints.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidProblem(format!(
                "breakpoints must be finite, got {x}"
            )));
        }
        if !self.lower.is_finite() || !self.upper.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "bounds must be finite, got [{}, {}]",
                self.lower, self.upper
            )));
        }
        Ok(())
    }
}

/// Shorthand for `IntegrationProblem::new(f, a, b).abs_tol(tol).integrate()`.
pub fn quad<F>(integrand: F, lower: f64, upper: f64, abs_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    IntegrationProblem::new(integrand, lower, upper)
        .abs_tol(abs_tol)
        .integrate()
}

pub fn integrate<F>(problem: &IntegrationProblem<F>) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    problem.validate()?;
    let (a, b, sign) = if problem.lower <= problem.upper {
        (problem.lower, problem.upper, 1.0)
    } else {
        (problem.upper, problem.lower, -1.0)
    };
    if a == b {
        return Ok(QuadResult::zero());
    }
    let mut cuts = vec![a];
    let mut inner: Vec<f64> = problem
        .breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < b)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);
    match adaptive(&problem.integrand, &cuts, problem.abs_tol, problem.max_evals) {
        Ok(res) => Ok(res.scaled(sign)),
        Err(Error::NonConvergence(res)) => Err(Error::NonConvergence(res.scaled(sign))),
        Err(e) => Err(e),
    }
}

/// Which half-line an improper integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// `(-inf, bound]`
    Below,
    /// `[bound, +inf)`
    Above,
}

/// [`quad`] with an initial partition at `points`.
pub fn quad_with_points<F>(
    integrand: F,
    lower: f64,
    upper: f64,
    points: &[f64],
    abs_tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    IntegrationProblem::new(integrand, lower, upper)
        .abs_tol(abs_tol)
        .breakpoints(points.iter().copied())
        .integrate()
}

/// Improper integral over a half-line, compactified by
/// `t = bound -/+ u / (1 - u)` with `u` in `(0, 1)`.
pub fn integrate_semiinfinite<F>(
    integrand: F,
    bound: f64,
    tail: Tail,
    abs_tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !bound.is_finite() {
        return Err(Error::InvalidProblem(format!(
            "half-line bound must be finite, got {bound}"
        )));
    }
    let dir = match tail {
        Tail::Below => -1.0,
        Tail::Above => 1.0,
    };
    let mapped = |u: f64| {
        let w = 1.0 - u;
        let t = bound + dir * u / w;
        integrand(t) / (w * w)
    };
    IntegrationProblem::new(mapped, 0.0, 1.0)
        .abs_tol(abs_tol)
        .integrate()
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn too_narrow(a: f64, b: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    b - a <= 64.0 * f64::EPSILON * scale
}

fn adaptive<F>(f: &F, cuts: &[f64], abs_tol: f64, max_evals: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    let mut evals = 0;
    for w in cuts.windows(2) {
        let (value, err) = gauss_kronrod(f, w[0], w[1])?;
        evals += 15;
        total_err += err;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            err,
        });
    }
    // Segments too short to bisect further keep contributing their value
    // and error but are no longer refined.
    let mut frozen: Vec<Segment> = Vec::new();

    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let mut v = 0.0;
        let mut e = 0.0;
        for s in heap.iter().chain(frozen) {
            v += s.value;
            e += s.err;
        }
        (v, e)
    };

    loop {
        if total_err <= abs_tol {
            let (v, e) = totals(&heap, &frozen);
            if e <= abs_tol {
                return Ok(QuadResult {
                    value: v,
                    err_estimate: e,
                    evals,
                    converged: true,
                });
            }
            total_err = e;
        }

        let Some(worst) = heap.pop() else {
            let (v, e) = totals(&heap, &frozen);
            return Err(Error::NonConvergence(QuadResult {
                value: v,
                err_estimate: e,
                evals,
                converged: false,
            }));
        };

        if too_narrow(worst.a, worst.b) {
            frozen.push(worst);
            continue;
        }

        if evals + 30 > max_evals {
            heap.push(worst);
            let (v, e) = totals(&heap, &frozen);
            return Err(Error::NonConvergence(QuadResult {
                value: v,
                err_estimate: e,
                evals,
                converged: false,
            }));
        }

        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gauss_kronrod(f, worst.a, mid)?;
        let (v2, e2) = gauss_kronrod(f, mid, worst.b)?;
        evals += 30;
        total_err += e1 + e2 - worst.err;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
}

/// One application of the 7/15 Gauss-Kronrod pair with the QUADPACK error
/// heuristic. Returns `(kronrod value, error estimate)`.
fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x })
        }
    };

    let f_center = eval(center)?;
    let mut res_g = f_center * WG[3];
    let mut res_k = f_center * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let y1 = eval(center - dx)?;
        let y2 = eval(center + dx)?;
        fv1[j] = y1;
        fv2[j] = y2;
        res_k += WGK[j] * (y1 + y2);
        res_abs += WGK[j] * (y1.abs() + y2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (y1 + y2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}
