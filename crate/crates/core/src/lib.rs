//! Volumes of Lambert cubes and double-rectangular tetrahedra in spherical,
//! Euclidean and hyperbolic space, together with the special functions and
//! quadrature they rest on.

pub mod error;
pub mod lambert;
pub mod orthoscheme;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use quadrature::{
    integrate, integrate_semiinfinite, quad, quad_with_points, IntegrationProblem, QuadResult, Tail,
};
