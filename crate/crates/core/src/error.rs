use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: String, bound: u64 },

    #[error("operands live in different parent groups")]
    ParentMismatch,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cover part {index} has infinite index; use the bounded search instead")]
    InfiniteIndexMember { index: usize },

    #[error("cover part {index} is the whole group")]
    ImproperPart { index: usize },

    #[error("a proper union needs at least 2 parts, got {0}")]
    TooFewParts(usize),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("zero has no unit exponents")]
    ZeroInput,

    #[error("characteristic mismatch: {left} vs {right}")]
    CharacteristicMismatch { left: u64, right: u64 },

    #[error("bad shift: {0}")]
    BadShift(String),

    #[error("subsemigroup {0} is not a subgroup")]
    NotASubgroup(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
