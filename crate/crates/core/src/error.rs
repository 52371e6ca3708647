use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid quantum numbers: {0}")]
    QuantumNumbers(String),

    #[error("no bound states for alpha = {0} (attractive coupling alpha < 0 required)")]
    NoBoundState(f64),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("matrix is not symmetric (relative asymmetry {0:e})")]
    NotSymmetric(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
