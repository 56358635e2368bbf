use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("unknown identity `{0}`")]
    UnknownId(String),
    #[error("parse error in `{expr}`: {msg}")]
    Parse { expr: String, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn range(msg: impl Into<String>) -> Error {
    Error::Range(msg.into())
}
