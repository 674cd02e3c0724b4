use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric procedure failed (quantile inversion, non-finite value, ...).
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The requested (budget, noise family) pair cannot be calibrated.
    #[error("calibration error: {0}")]
    Calibration(String),

    /// The operation is not defined for this input (e.g. discrete noise with
    /// non-integer shift).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Vector dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
