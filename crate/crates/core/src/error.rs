use thiserror::Error;

/// Errors raised by the combinatorial and algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("paths are not comparable in Bruhat order: {0}")]
    Order(String),
    #[error("strip cannot be placed: {0}")]
    StripPlacement(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
