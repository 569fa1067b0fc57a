use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: element does not belong to {0}")]
    RingMismatch(String),
    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("ring is infinite; enumeration requires a finite ring")]
    InfiniteRing,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("matrix is not in SL3 (determinant is not 1)")]
    NotSl3,
    #[error("determinant is not a unit")]
    DetNotUnit,
    #[error("determinant is nonzero")]
    NonzeroDeterminant,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exhausted (budget {0})")]
    BudgetExhausted(u64),
    #[error("ring too large for this operation (size {size}, guard {guard})")]
    SizeGuard { size: u64, guard: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input out of supported range: {0}")]
    InputTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
