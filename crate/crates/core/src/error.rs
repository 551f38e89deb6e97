use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not exactly divisible: {0}")]
    NotDivisible(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("unbound symbol: {0}")]
    Unbound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {needed} exceeds truncation degree {bound}")]
    TruncationExceeded { needed: usize, bound: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
