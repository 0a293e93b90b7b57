use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("endomorphism is not skew-symmetric")]
    NotSkew,
    #[error("form has degree {0}, expected {1}")]
    WrongDegree(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("spinor is not in the expected fiber: {0}")]
    NotInFiber(String),
    #[error("unknown check id: {0}")]
    UnknownCheck(String),
    #[error("{0}")]
    Failed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
