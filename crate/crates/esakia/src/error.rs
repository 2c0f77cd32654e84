use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input data.
    #[error("input error: {0}")]
    Input(String),
    /// A size guard refused the request.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// The backend cannot represent what was asked for.
    #[error("unsupported on this backend: {0}")]
    UnsupportedBackend(String),
    /// A hypothesis of the requested computation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A chain morphism constructor failed one of its obligations.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
