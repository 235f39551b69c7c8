use thiserror::Error;

use crate::quadrature::QuadResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The evaluation budget ran out before the requested tolerance was met.
    /// Carries the best estimate reached so far.
    #[error(
        "quadrature did not converge: value {:.3e} with error estimate {:.3e} after {} evaluations",
        .0.value, .0.err_estimate, .0.evals
    )]
    NonConvergence(QuadResult),

    #[error("integrand is not finite at interior node x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("invalid integration problem: {0}")]
    InvalidProblem(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
