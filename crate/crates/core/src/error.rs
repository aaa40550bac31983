use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("channel vector needs at least {min} entries, got {len}")]
    TooShort { len: usize, min: usize },
    #[error("entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("channel vector is all zero")]
    ZeroChannel,
    #[error("coefficient vector is all zero")]
    ZeroCoefficient,
    #[error("power must be positive and finite, got {0}")]
    InvalidPower(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("LLL parameter delta must lie in (0.25, 1], got {0}")]
    InvalidDelta(String),
    #[error("K upper bound must be at least 1")]
    InvalidKBound,
    #[error("Gram matrix is not numerically positive definite")]
    NotPositiveDefinite,
    #[error("invalid preprocessing record: {0}")]
    InvalidRecord(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
