use std::io;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside its documented domain.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The request exceeds a configured scale cap.
    #[error("resource error: {what} requires n <= {cap}, got n = {n}")]
    Resource { what: &'static str, n: u32, cap: u32 },

    /// A structural invariant (matching, partition, chain order) is violated.
    #[error("invariant error: {0}")]
    Invariant(String),

    /// Malformed text input. Line numbers are 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
