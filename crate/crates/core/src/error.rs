use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size limit exceeded: {0}")]
    TooLarge(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A randomized construction did not succeed within its attempt budget.
    #[error("no valid construction after {attempts} attempts (best had {best_edges} edges, needed {required})")]
    Retryable {
        attempts: usize,
        best_edges: usize,
        required: usize,
    },

    /// A claim was requested outside the parameter region where it is asserted.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
