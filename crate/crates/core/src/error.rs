use thiserror::Error;

/// Errors raised by the field, linear-algebra and code machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime (supported range 2..=251)")]
    NonPrime(u64),
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad codimension: expected dim V - dim S = 2, got {0}")]
    BadCodimension(isize),
    #[error("subspace S is not contained in V")]
    NotContained,
    #[error("generator rows are linearly dependent over K (rank {rank} < {rows})")]
    DependentRows { rank: usize, rows: usize },
    #[error("code length m = {m} must exceed |K| = {q}")]
    LengthTooShort { m: usize, q: u64 },
    #[error("estimated work {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
