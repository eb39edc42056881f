use thiserror::Error;

/// Errors raised by the library. Every variant describes a violated
/// precondition; none of them are recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),

    #[error("composition {parts:?} does not sum to {k}")]
    InvalidComposition { parts: Vec<usize>, k: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("assignment is not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("values are not constant on conjugacy classes: {0}")]
    NotClassFunction(String),

    #[error("character is not one-dimensional")]
    NotOneDimensional,

    #[error("character is not trivial")]
    NotTrivialCharacter,

    #[error("characters live on different groups")]
    GroupMismatch,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("zero vector among the factors (factor {0})")]
    ZeroVector(usize),

    #[error("tensor is not fixed by the idempotent")]
    NotInImage,

    #[error("{what}: {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        bound: u128,
    },

    #[error("{0} does not reduce to a non-negative rational integer")]
    NotNonNegativeInteger(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("poset is not graded")]
    Ungraded,

    #[error("{0} and {1} are not comparable")]
    Incomparable(String, String),

    #[error("empty subset")]
    EmptySubset,

    #[error("{0} is not an element of the poset")]
    NotInPoset(String),

    #[error("the projected point is zero")]
    ProjectionVanishes,

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_bound(what: &'static str, value: u128, bound: u128) -> Result<()> {
    if value > bound {
        Err(Error::BoundExceeded { what, value, bound })
    } else {
        Ok(())
    }
}
