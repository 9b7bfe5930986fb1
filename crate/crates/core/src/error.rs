use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The cone contains the line through `witness`.
    #[error("cone is not pointed: it contains the line through {}", crate::arith::format_int_vec(.witness))]
    NonPointed { witness: Vec<crate::Int> },

    #[error("subspace basis is linearly dependent")]
    NonInjectiveBasis,

    #[error("class {0} is not integral")]
    NonIntegral(String),

    #[error("class {0} is not effective")]
    NotEffective(String),

    #[error("the zero class has no chamber")]
    ZeroClass,

    #[error("section enumeration exceeded the ceiling of {0} monomials")]
    ResourceLimit(u64),

    #[error("invalid weight system: {0}")]
    InvalidWeightSystem(String),

    #[error("invalid pullback map: {0}")]
    InvalidMap(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}
