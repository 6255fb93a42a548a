use thiserror::Error;

use crate::pulse::PulseId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pulse {0} has no composite transition function")]
    UnsupportedPulse(PulseId),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("only {found} envelope extrema in range, need at least {needed}")]
    InsufficientExtrema { found: usize, needed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
