//! Crate-wide error type.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {size} exceeds the cap {cap}")]
    FieldTooLarge { size: u128, cap: u64 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("incompatible shapes: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("duplicate codeword at index {index}")]
    DuplicateCodeword { index: usize },
    #[error("enumeration size {size} exceeds the cap {cap}")]
    EnumerationCapExceeded { size: BigUint, cap: u64 },
    #[error("codeword of rank {rank} exceeds the allowed maximum rank {max_rank}")]
    RankBoundViolated { rank: usize, max_rank: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
