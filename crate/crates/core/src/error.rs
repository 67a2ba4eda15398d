use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (unknown vertex, bad chaining, ...).
    #[error("input error: {0}")]
    Input(String),
    /// A precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured cap was exceeded.
    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: usize },
    /// Two independent computations disagreed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    /// Syntax error in a document or expression.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
