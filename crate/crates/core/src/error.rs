use thiserror::Error;

/// Errors raised by the computational routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero: vanishing factor {0}")]
    DivisionByZero(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Two evaluation routes that must agree did not.
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("singular linear system ({0})")]
    Singular(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
