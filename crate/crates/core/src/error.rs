use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("non-finite coordinate encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("norm exponent must satisfy q >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("invalid space spelling `{0}` (expected `scalar` or `lq:<q>:<m>`)")]
    ParseSpace(String),

    #[error("invalid problem spelling `{0}`: {1}")]
    ParseProblem(String, String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("interpolation grid of {nodes} nodes exceeds budget {budget}")]
    BudgetExceeded { nodes: u128, budget: u64 },

    #[error("problem has no exact integral and no reference value was supplied")]
    MissingReference,

    #[error("vector family of size {n} exceeds the limit {max} for {op}")]
    FamilyTooLarge { n: usize, max: usize, op: &'static str },

    #[error("expected {expected} vectors, got {got}")]
    VectorCountMismatch { expected: usize, got: usize },

    #[error("all vectors in the family are zero")]
    AllZeroVectors,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("need at least {needed} usable points, got {got}")]
    NotEnoughPoints { needed: usize, got: usize },

    #[error("partition trace does not match the vector family: {0}")]
    TraceMismatch(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
