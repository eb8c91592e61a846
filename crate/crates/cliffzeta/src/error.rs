use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("inconsistent group data: {0}")]
    Inconsistent(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
