use thiserror::Error;

/// Errors raised by the model, spectral and polynomial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numeric range exceeded: {0}")]
    NumericRange(String),

    #[error("tail bound not reached below {eps:e} before cap {cap}")]
    TailBound { eps: f64, cap: u64 },

    #[error("eigensolver did not converge after {iterations} iterations")]
    Convergence { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
