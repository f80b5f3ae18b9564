use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("{what}: requested {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("invalid permutation {window:?}: {reason}")]
    InvalidPermutation { window: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent poset: relation {0} < {1} closes a cycle")]
    Inconsistent(i32, i32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
