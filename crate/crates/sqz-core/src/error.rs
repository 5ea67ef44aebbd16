use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A structural precondition was violated (bad index, unphysical
    /// matrix, parameter outside its declared range).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A mathematically singular or out-of-domain evaluation was requested
    /// (e.g. a spectral density at zero sideband frequency).
    #[error("numeric domain error: {0}")]
    Domain(String),

    /// A computation left the representable floating-point range.
    #[error("numeric range error: {0}")]
    NumericRange(String),

    /// Malformed run configuration or CLI usage.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
