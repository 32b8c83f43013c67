use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vectors need at least 2 coordinates, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero vector")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("vector does not lie in the plane of the reference pair")]
    NotCoplanar,
    #[error("reflection produced the zero vector")]
    DegenerateReflection,
    #[error("work budget exhausted")]
    BudgetExhausted,
    #[error("cannot factor zero")]
    FactorZero,
    #[error("factorization is incomplete")]
    IncompleteFactorization,
    #[error("divisor count {count} exceeds cap {cap}")]
    TooManyDivisors { count: u128, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
