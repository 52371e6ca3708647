//! Special functions and quadrature shared by every other module.

pub(crate) mod gamma;
pub(crate) mod poly;
mod quadrature;

pub use gamma::log_gamma;
pub use poly::{jacobi, laguerre, laguerre_sequence};
pub use quadrature::{gauss_legendre, graded_breakpoints, Domain, QuadratureRule};
