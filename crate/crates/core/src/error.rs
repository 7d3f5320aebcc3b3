use thiserror::Error;

/// Errors produced by the combinatorial, series and matrix layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("permutation {0} does not lie on the geodesic between identity and the full cycle")]
    GeodesicViolation(String),

    #[error("comb meets the block containing n (elements {0:?})")]
    MeetNotTrivial(Vec<usize>),

    #[error("{what}: n = {n} exceeds the budget {budget}")]
    ResourceLimit {
        what: String,
        n: usize,
        budget: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("coefficient index {index} out of range 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("division by zero while evaluating a Laurent polynomial")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
