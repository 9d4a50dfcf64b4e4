use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied parameters outside the documented contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// Arithmetic undefined for the given input (inverse of zero and friends).
    #[error("domain error: {0}")]
    Domain(String),
    /// The field context lacks something the operation needs, e.g. a log table.
    #[error("capability error: {0}")]
    Capability(String),
    #[error("corrupt progress file: {0}")]
    CorruptProgress(String),
    #[error("progress file mismatch: {0}")]
    ProgressMismatch(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
}
