use thiserror::Error;

/// Failures raised by the engine. None of these are recoverable conditions in
/// the normal pipeline: an inexact division or a failed identity means a logic
/// error upstream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inexact division (remainder {remainder})")]
    InexactDivision { remainder: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
