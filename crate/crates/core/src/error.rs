use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A result violated a physical invariant beyond roundoff (e.g. positivity).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("convergence check failed: {0}")]
    Convergence(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
