use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid norm specification: {0}")]
    InvalidSpec(String),

    #[error("invalid exponent {0}: expected a real number in {1}")]
    InvalidExponent(f64, &'static str),

    #[error("the zero vector has no norming functional")]
    ZeroVector,

    #[error("sample of the dual sphere is empty")]
    EmptySample,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
