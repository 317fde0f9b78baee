use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("word length {length} exceeds the cap of {cap} letters")]
    TooLong { length: u64, cap: u64 },

    #[error("diameter is undefined for the empty configuration")]
    EmptySupport,

    #[error("element is not in the derived subgroup")]
    NotInDerived,

    #[error("element is not in the subgroup generated by squares")]
    NotInV,

    #[error("element is not a square")]
    NotSquare,

    #[error("all moduli are zero")]
    AllZeroModuli,

    #[error("configuration is not divisible by x^{modulus} - 1")]
    NotInKernel { modulus: u64 },

    #[error("bit strings have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("lamplighter displacement must be positive, got {0}")]
    NonPositiveDelta(i64),

    #[error("malformed equation: {0}")]
    MalformedEquation(String),

    #[error("assignment is missing variable {0}")]
    MissingVariable(String),

    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("invalid 3-partition instance: {0}")]
    InvalidInstance(String),

    #[error("certificate does not tile the target: {0}")]
    Tiling(String),

    #[error("internal witness check failed: {0}")]
    WitnessCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
