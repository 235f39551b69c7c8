//! Python bindings: `import noneuclid`.
//!
//! Domain errors raise `noneuclid.DomainError` (a `ValueError`), failed
//! quadratures `noneuclid.NonConvergenceError` (a `RuntimeError`).

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use engine::lambert::{self, Geometry, IntegralRoute};
use engine::orthoscheme::{self, Curvature};
use engine::specfun::{self, DEFAULT_TOL};
use engine::verify;

create_exception!(noneuclid, DomainError, PyValueError);
create_exception!(noneuclid, NonConvergenceError, PyRuntimeError);

fn err(e: engine::Error) -> PyErr {
    match e {
        engine::Error::Domain(_) | engine::Error::InvalidProblem(_) => DomainError::new_err(e.to_string()),
        engine::Error::NonConvergence(_) | engine::Error::NonFiniteIntegrand { .. } => {
            NonConvergenceError::new_err(e.to_string())
        }
    }
}

#[pyclass(frozen, skip_from_py_object, module = "noneuclid")]
#[derive(Clone, Copy)]
struct QuadResult {
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    err_estimate: f64,
    #[pyo3(get)]
    evals: usize,
    #[pyo3(get)]
    converged: bool,
}

impl From<engine::QuadResult> for QuadResult {
    fn from(r: engine::QuadResult) -> Self {
        QuadResult {
            value: r.value,
            err_estimate: r.err_estimate,
            evals: r.evals,
            converged: r.converged,
        }
    }
}

#[pymethods]
impl QuadResult {
    fn __repr__(&self) -> String {
        format!(
            "QuadResult(value={}, err_estimate={:e}, evals={}, converged={})",
            self.value,
            self.err_estimate,
            self.evals,
            if self.converged { "True" } else { "False" }
        )
    }
}

/// Essential angles of a Lambert cube, classified by geometry.
#[pyclass(frozen, skip_from_py_object, module = "noneuclid")]
#[derive(Clone, Copy)]
struct Cube(lambert::CubeAngles);

#[pymethods]
impl Cube {
    #[new]
    fn new(alpha: f64, beta: f64, gamma: f64) -> PyResult<Self> {
        lambert::classify(alpha, beta, gamma).map(Cube).map_err(err)
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }

    /// "spherical" or "hyperbolic".
    #[getter]
    fn geometry(&self) -> &'static str {
        self.0.geometry().as_str()
    }

    fn principal(&self) -> PyResult<Principal> {
        lambert::principal(&self.0).map(Principal).map_err(err)
    }

    /// `(l_alpha, l_beta, l_gamma)`; spherical cubes only.
    fn edge_lengths(&self) -> PyResult<(f64, f64, f64)> {
        let pd = lambert::principal(&self.0).map_err(err)?;
        let e = lambert::edge_lengths_spherical(&pd).map_err(err)?;
        Ok((e.l_alpha, e.l_beta, e.l_gamma))
    }

    /// method: "delta" (default), "integral" or "ray"; the last two are
    /// spherical only.
    #[pyo3(signature = (tol = DEFAULT_TOL, method = "delta"))]
    fn volume(&self, tol: f64, method: &str) -> PyResult<f64> {
        match (self.0.geometry(), method) {
            (_, "delta") => lambert::volume(&self.0, tol),
            (Geometry::Spherical, "integral") => lambert::volume_spherical_integral(&self.0, tol),
            (Geometry::Spherical, "ray") => {
                lambert::volume_spherical_integral_with(&self.0, tol, IntegralRoute::Ray).map(|r| r.value)
            }
            _ => {
                return Err(DomainError::new_err(format!(
                    "method '{method}' is not available for a {} cube",
                    self.0.geometry()
                )))
            }
        }
        .map_err(err)
    }

    /// Spherical δ-decomposition with its accumulated error estimate.
    #[pyo3(signature = (tol = DEFAULT_TOL))]
    fn volume_estimate(&self, tol: f64) -> PyResult<QuadResult> {
        lambert::volume_spherical_estimate(&self.0, tol)
            .map(Into::into)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Cube(alpha={}, beta={}, gamma={}, geometry='{}')",
            self.0.alpha(),
            self.0.beta(),
            self.0.gamma(),
            self.0.geometry()
        )
    }
}

#[pyclass(frozen, skip_from_py_object, module = "noneuclid")]
#[derive(Clone, Copy)]
struct Principal(lambert::PrincipalData);

#[pymethods]
impl Principal {
    #[getter]
    fn geometry(&self) -> &'static str {
        self.0.geometry.as_str()
    }

    #[getter(T)]
    fn t(&self) -> f64 {
        self.0.t
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }

    /// `(L, M, N)` = tangents of the essential angles.
    #[getter]
    fn lmn(&self) -> (f64, f64, f64) {
        (self.0.l, self.0.m, self.0.n)
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p
    }

    /// `(A, B, C)` for spherical cubes, `None` otherwise.
    #[getter]
    fn abc(&self) -> Option<(f64, f64, f64)> {
        self.0.abc
    }

    fn quartic_residual(&self) -> f64 {
        self.0.quartic_residual()
    }

    fn __repr__(&self) -> String {
        format!("Principal(geometry='{}', T={}, theta={})", self.0.geometry, self.0.t, self.0.theta)
    }
}

/// Double-rectangular tetrahedron T(alpha, beta, gamma).
#[pyclass(frozen, skip_from_py_object, module = "noneuclid")]
#[derive(Clone, Copy)]
struct Orthoscheme(orthoscheme::OrthoschemeAngles);

#[pymethods]
impl Orthoscheme {
    #[new]
    fn new(alpha: f64, beta: f64, gamma: f64) -> PyResult<Self> {
        orthoscheme::OrthoschemeAngles::new(alpha, beta, gamma)
            .map(Orthoscheme)
            .map_err(err)
    }

    /// "spherical", "euclidean" or "hyperbolic".
    #[getter]
    fn curvature(&self) -> &'static str {
        orthoscheme::classify_orthoscheme(&self.0).curvature.as_str()
    }

    /// `T = tan θ`, or `None` unless spherical.
    #[getter(T)]
    fn t(&self) -> Option<f64> {
        orthoscheme::classify_orthoscheme(&self.0).t
    }

    #[getter]
    fn theta(&self) -> Option<f64> {
        orthoscheme::classify_orthoscheme(&self.0).theta
    }

    /// `(a, b, c)`; spherical only.
    fn edges(&self) -> PyResult<(f64, f64, f64)> {
        let data = orthoscheme::classify_orthoscheme(&self.0);
        let e = orthoscheme::orthoscheme_edges(&data, &self.0).map_err(err)?;
        Ok((e.a, e.b, e.c))
    }

    /// method: "schlaefli" (default), "delta" or "integral".
    #[pyo3(signature = (tol = DEFAULT_TOL, method = "schlaefli"))]
    fn volume(&self, tol: f64, method: &str) -> PyResult<f64> {
        let data = orthoscheme::classify_orthoscheme(&self.0);
        // the quadrature routes have no Euclidean case; the series returns its boundary value
        let euclidean = data.curvature == Curvature::Euclidean;
        match method {
            "schlaefli" => orthoscheme::volume_orthoscheme_schlaefli(&self.0, tol),
            "delta" | "integral" if euclidean => orthoscheme::volume_orthoscheme_schlaefli(&self.0, tol),
            "delta" => orthoscheme::volume_via_delta(&self.0, tol),
            "integral" => orthoscheme::volume_orthoscheme_integral(&self.0, tol),
            _ => return Err(DomainError::new_err(format!("unknown method '{method}'"))),
        }
        .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Orthoscheme(alpha={}, beta={}, gamma={})",
            self.0.alpha(),
            self.0.beta(),
            self.0.gamma()
        )
    }
}

#[pyclass(frozen, module = "noneuclid")]
struct CheckReport {
    #[pyo3(get)]
    name: String,
    #[pyo3(get)]
    passed: bool,
    #[pyo3(get)]
    max_residual: f64,
    #[pyo3(get)]
    tolerance: f64,
    #[pyo3(get)]
    sample_count: usize,
    #[pyo3(get)]
    failures: usize,
}

#[pymethods]
impl CheckReport {
    fn __repr__(&self) -> String {
        format!(
            "CheckReport(name='{}', passed={}, max_residual={:e}, tolerance={:e})",
            self.name,
            if self.passed { "True" } else { "False" },
            self.max_residual,
            self.tolerance
        )
    }
}

/// Λ(x) = -∫₀ˣ log|2 sin t| dt.
#[pyfunction]
fn lobachevsky(x: f64) -> f64 {
    specfun::lobachevsky(x)
}

/// Δ(α, θ) = Λ(α+θ) - Λ(α-θ).
#[pyfunction]
fn delta_cap(alpha: f64, theta: f64) -> f64 {
    specfun::delta_cap(alpha, theta)
}

/// δ(α, θ); `kind` is "direct", "extended" or "reduced".
#[pyfunction]
#[pyo3(signature = (alpha, theta, tol = DEFAULT_TOL, kind = "direct"))]
fn delta(alpha: f64, theta: f64, tol: f64, kind: &str) -> PyResult<QuadResult> {
    match kind {
        "direct" => specfun::delta_s_tol(alpha, theta, tol),
        "extended" => specfun::delta_s_extended_tol(alpha, theta, tol),
        "reduced" => specfun::delta_s_reduced_tol(alpha, theta, tol),
        _ => return Err(DomainError::new_err(format!("unknown delta kind '{kind}'"))),
    }
    .map(Into::into)
    .map_err(err)
}

/// Closed forms of δ at θ ∈ {0, π/4, π/2, 3π/4, π}.
#[pyfunction]
fn delta_closed(alpha: f64, theta: f64) -> PyResult<f64> {
    specfun::delta_s_closed(alpha, theta).map_err(err)
}

/// ∂δ/∂α.
#[pyfunction]
fn delta_dalpha(alpha: f64, theta: f64) -> PyResult<f64> {
    specfun::delta_s_dalpha(alpha, theta).map_err(err)
}

/// Li₂(r, t) = -½∫₀^r log(1 - 2x cos t + x²) dx/x.
#[pyfunction]
#[pyo3(signature = (r, t, tol = DEFAULT_TOL))]
fn dilog2(r: f64, t: f64, tol: f64) -> PyResult<f64> {
    specfun::dilog2_tol(r, t, tol).map(|q| q.value).map_err(err)
}

/// `(gamma, volume)` for the family cos²α + cos²β + cos²γ = 1.
#[pyfunction]
#[pyo3(signature = (alpha, beta, tol = DEFAULT_TOL))]
fn volume_special_family(alpha: f64, beta: f64, tol: f64) -> PyResult<(f64, f64)> {
    lambert::volume_special_family(alpha, beta, tol).map_err(err)
}

/// Runs the identity suite; `tol` can only tighten internal quadratures.
#[pyfunction]
#[pyo3(signature = (seed = verify::DEFAULT_SEED, tol = None))]
fn selfcheck(py: Python<'_>, seed: u64, tol: Option<f64>) -> PyResult<Vec<CheckReport>> {
    let reports = py.detach(|| verify::run_all(seed, tol)).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| CheckReport {
            failures: r.details.len(),
            name: r.name,
            passed: r.passed,
            max_residual: r.max_residual,
            tolerance: r.tolerance,
            sample_count: r.sample_count,
        })
        .collect())
}

#[pymodule]
fn noneuclid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("NonConvergenceError", py.get_type::<NonConvergenceError>())?;
    m.add_class::<QuadResult>()?;
    m.add_class::<Cube>()?;
    m.add_class::<Principal>()?;
    m.add_class::<Orthoscheme>()?;
    m.add_class::<CheckReport>()?;
    m.add_function(wrap_pyfunction!(lobachevsky, m)?)?;
    m.add_function(wrap_pyfunction!(delta_cap, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(delta_closed, m)?)?;
    m.add_function(wrap_pyfunction!(delta_dalpha, m)?)?;
    m.add_function(wrap_pyfunction!(dilog2, m)?)?;
    m.add_function(wrap_pyfunction!(volume_special_family, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck, m)?)?;
    Ok(())
}
