use thiserror::Error;

/// Errors raised by the library. Each variant maps to a CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A central charge vanishes at the queried slice point.
    #[error("on a hole of the slice: {0}")]
    Hole(String),
    /// A Gram matrix, reference class or config file is unusable.
    #[error("configuration error: {0}")]
    Config(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A mathematical guarantee failed at runtime.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Domain(_) | Error::Hole(_) => 2,
            Error::Config(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
