//! Double-rectangular tetrahedra T(α, β, γ) with dihedral angles π/2 - α,
//! β and π/2 - γ along a path of three edges and right angles elsewhere.
//!
//! Volume routes (spherical case only): the Schläfli series, the
//! δ-decomposition and the improper integral in `t = tan τ`. All three are
//! restricted to `β ≤ π/2`; see [`volume_via_delta`].

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semiinfinite, QuadResult, Tail};
use crate::specfun::{check_orthoscheme_bounds, delta_s_tol, schlaefli_boundary, schlaefli_series, SchlaefliArgs};

/// `|cos²α cos²γ - cos²β|` at or below this counts as Euclidean.
pub const EUCLIDEAN_EPS: f64 = 1e-13;

const DEGENERATE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoschemeAngles {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl OrthoschemeAngles {
    /// `0 ≤ α, γ ≤ π/2`, `0 ≤ β ≤ π`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        check_orthoscheme_bounds(alpha, beta, gamma)?;
        Ok(OrthoschemeAngles { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The same tetrahedron with α and γ exchanged.
    pub fn swapped(&self) -> Self {
        OrthoschemeAngles {
            alpha: self.gamma,
            beta: self.beta,
            gamma: self.alpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curvature {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl Curvature {
    pub fn as_str(self) -> &'static str {
        match self {
            Curvature::Spherical => "spherical",
            Curvature::Euclidean => "euclidean",
            Curvature::Hyperbolic => "hyperbolic",
        }
    }
}

impl std::fmt::Display for Curvature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Curvature tag plus, where defined, `D`, `X`, `T = tan θ` and `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoschemeData {
    pub curvature: Curvature,
    pub d: Option<f64>,
    pub x: Option<f64>,
    pub t: Option<f64>,
    pub theta: Option<f64>,
}

/// Spherical iff `cos²α cos²γ > cos²β`, Euclidean on equality (to
/// [`EUCLIDEAN_EPS`]), hyperbolic otherwise.
pub fn classify_orthoscheme(angles: &OrthoschemeAngles) -> OrthoschemeData {
    let (ca, cb, cg) = (angles.alpha.cos(), angles.beta.cos(), angles.gamma.cos());
    let gap = ca * ca * cg * cg - cb * cb;
    let s = angles.alpha.sin() * angles.gamma.sin();
    if gap.abs() <= EUCLIDEAN_EPS {
        return OrthoschemeData {
            curvature: Curvature::Euclidean,
            d: Some(0.0),
            x: (s > 0.0).then_some(1.0),
            t: None,
            theta: None,
        };
    }
    if gap < 0.0 {
        return OrthoschemeData {
            curvature: Curvature::Hyperbolic,
            d: None,
            x: None,
            t: None,
            theta: None,
        };
    }
    let d = gap.sqrt();
    let t = s / d;
    OrthoschemeData {
        curvature: Curvature::Spherical,
        d: Some(d),
        x: Some((s - d) / (s + d)),
        t: Some(t),
        theta: Some(t.atan()),
    }
}

/// Classification plus the checks shared by every spherical volume route.
fn spherical_data(angles: &OrthoschemeAngles) -> Result<(f64, f64)> {
    let data = classify_orthoscheme(angles);
    if data.curvature != Curvature::Spherical {
        return Err(Error::domain(format!(
            "orthoscheme ({}, {}, {}) is {}, not spherical",
            angles.alpha, angles.beta, angles.gamma, data.curvature
        )));
    }
    reject_degenerate(angles)?;
    if angles.beta > FRAC_PI_2 + DEGENERATE_EPS {
        return Err(Error::domain(format!(
            "volume routes need beta <= pi/2 (got {}); for larger beta the series and delta forms disagree",
            angles.beta
        )));
    }
    Ok((data.t.expect("spherical"), data.theta.expect("spherical")))
}

fn reject_degenerate(angles: &OrthoschemeAngles) -> Result<()> {
    for (name, x) in [("alpha", angles.alpha), ("gamma", angles.gamma)] {
        if x <= DEGENERATE_EPS || x >= FRAC_PI_2 - DEGENERATE_EPS {
            return Err(Error::domain(format!(
                "degenerate orthoscheme: {name} = {x} must lie strictly inside (0, pi/2)"
            )));
        }
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must be positive, got {tol}")))
    }
}

/// `S(α, β, γ) / 4` from the Schläfli series. Euclidean input returns the
/// closed boundary value of the series (zero up to rounding).
pub fn volume_orthoscheme_schlaefli(angles: &OrthoschemeAngles, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let data = classify_orthoscheme(angles);
    match data.curvature {
        Curvature::Euclidean => {
            return Ok(schlaefli_boundary(angles.alpha, angles.beta, angles.gamma)? / 4.0);
        }
        Curvature::Hyperbolic => {
            return Err(Error::domain(
                "hyperbolic orthoscheme volumes are not computed",
            ));
        }
        Curvature::Spherical => {}
    }
    spherical_data(angles)?;
    let args = SchlaefliArgs::new(angles.alpha, angles.beta, angles.gamma)?;
    Ok(schlaefli_series(&args, 4.0 * tol)? / 4.0)
}

/// `¼(-δ(α,θ) + δ(β,θ) - δ(γ,θ) + δ(0,θ))`.
///
/// For `β > π/2` this expression and the Schläfli series no longer agree
/// (the series does not even vanish on the Euclidean boundary there), so
/// every volume route is limited to `β ≤ π/2`.
pub fn volume_via_delta(angles: &OrthoschemeAngles, tol: f64) -> Result<f64> {
    Ok(volume_via_delta_estimate(angles, tol)?.value)
}

pub fn volume_via_delta_estimate(angles: &OrthoschemeAngles, tol: f64) -> Result<QuadResult> {
    check_tol(tol)?;
    let (_, theta) = spherical_data(angles)?;
    let terms = [
        (angles.alpha, -1.0),
        (angles.beta, 1.0),
        (angles.gamma, -1.0),
        (0.0, 1.0),
    ];
    let mut out = QuadResult {
        value: 0.0,
        err_estimate: 0.0,
        evals: 0,
        converged: true,
    };
    for (x, w) in terms {
        let r = delta_s_tol(x, theta, tol)?;
        out.value += w * r.value;
        out.err_estimate += r.err_estimate;
        out.evals += r.evals;
        out.converged &= r.converged;
    }
    out.value *= 0.25;
    out.err_estimate *= 0.25;
    Ok(out)
}

/// `¼∫_T^∞ log[(t²+A²)(1+B²)(t²+C²) / ((1+A²)(t²+B²)(1+C²)t²)] dt/(t²-1)`
/// with `A, B, C = tan α, tan β, tan γ`.
///
/// Written with `w = t² - 1` and `cos²x = 1/(1 + tan²x)` the integrand is
/// `[log(1+w cos²α) - log(1+w cos²β) + log(1+w cos²γ) - log(1+w)] / w`,
/// which stays finite at `β = π/2` and at the removable point `t = 1`.
pub fn volume_orthoscheme_integral(angles: &OrthoschemeAngles, tol: f64) -> Result<f64> {
    Ok(volume_orthoscheme_integral_estimate(angles, tol)?.value)
}

pub fn volume_orthoscheme_integral_estimate(angles: &OrthoschemeAngles, tol: f64) -> Result<QuadResult> {
    check_tol(tol)?;
    let (t, _) = spherical_data(angles)?;
    let sq = |x: f64| x.cos().powi(2);
    let terms = [
        (sq(angles.alpha), 1.0),
        (sq(angles.beta), -1.0),
        (sq(angles.gamma), 1.0),
        (1.0, -1.0),
    ];
    let f = |t: f64| {
        let w = (t - 1.0) * (t + 1.0);
        if w.abs() < 1e-5 {
            return terms
                .iter()
                .map(|&(k, s)| s * k * (1.0 - k * w * (0.5 - k * w * (1.0 / 3.0 - 0.25 * k * w))))
                .sum();
        }
        let num: f64 = terms.iter().map(|&(k, s)| s * (k * w).ln_1p()).sum();
        num / w
    };
    Ok(integrate_semiinfinite(f, t, Tail::Above, 4.0 * tol)?.scaled(0.25))
}

/// Edge lengths `a, b, c` opposite the angles π/2 - α, β, π/2 - γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoschemeEdges {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Edge lengths from the Tangent Rule `tan α/tan a = tan β/tan b =
/// tan γ/tan c = T`, with each length on the branch whose cosine has the
/// sign of the matching angle's cosine (so `b = π/2` at `β = π/2`).
pub fn orthoscheme_edges(data: &OrthoschemeData, angles: &OrthoschemeAngles) -> Result<OrthoschemeEdges> {
    let t = match (data.curvature, data.t) {
        (Curvature::Spherical, Some(t)) => t,
        _ => {
            return Err(Error::domain(format!(
                "edge lengths need a spherical orthoscheme, got {}",
                data.curvature
            )))
        }
    };
    reject_degenerate(angles)?;
    let edge = |x: f64| x.sin().atan2(x.cos() * t);
    Ok(OrthoschemeEdges {
        a: edge(angles.alpha),
        b: edge(angles.beta),
        c: edge(angles.gamma),
    })
}

/// `cos β · cos a · cos c - cos α · cos γ · cos b`; zero when the Cosine
/// Rule `cos β/cos b = (cos α/cos a)(cos γ/cos c)` holds.
pub fn cosine_rule_residual(angles: &OrthoschemeAngles, edges: &OrthoschemeEdges) -> f64 {
    angles.beta.cos() * edges.a.cos() * edges.c.cos()
        - angles.alpha.cos() * angles.gamma.cos() * edges.b.cos()
}

/// `(1+A²)(T²+B²)(1+C²)T² / ((T²+A²)(1+B²)(T²+C²)) - 1`, written in
/// cosines so that `β = π/2` is admissible.
pub fn biquadratic_residual(data: &OrthoschemeData, angles: &OrthoschemeAngles) -> Result<f64> {
    let t = match (data.curvature, data.t) {
        (Curvature::Spherical, Some(t)) => t,
        _ => return Err(Error::domain("biquadratic residual needs a spherical orthoscheme")),
    };
    let t2 = t * t;
    // (T² + X²)/(1 + X²) = T² cos²x + sin²x
    let g = |x: f64| t2 * x.cos().powi(2) + x.sin().powi(2);
    Ok(g(angles.beta) * t2 / (g(angles.alpha) * g(angles.gamma)) - 1.0)
}
