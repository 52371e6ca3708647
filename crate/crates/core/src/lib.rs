//! Algebraic solution of the two-dimensional Dunkl-Coulomb problem
//! H = -½∇²_D + α/r, together with independent numerical checks of every
//! closed form.
//!
//! * [`model`]: parameters, quantum numbers, separation constant, Bargmann index, energies
//! * [`angular`]: angular eigenfunctions and the reflection-deformed angular operator
//! * [`radial`]: Sturmian and physical radial functions, finite-difference spectrum
//! * [`su11`]: su(1,1) representation matrices and grid realizations of the generators
//! * [`coherent`]: Perelomov coherent states
//! * [`verify`]: the verification suites behind the `verify` command

pub mod angular;
pub mod coherent;
pub mod eigen;
mod error;
pub mod fd;
pub mod model;
pub mod radial;
pub mod specfun;
pub mod su11;
pub mod verify;

pub use error::{Error, Result};
pub use model::{ModelParams, QuantumNumbers, SpectralData};
pub use num_complex::Complex64;
pub use specfun::{jacobi, laguerre, log_gamma, QuadratureRule};
