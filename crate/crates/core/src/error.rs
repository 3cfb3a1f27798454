use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("coefficient index {index} out of range [0, {degree}]")]
    IndexOutOfRange { index: u64, degree: u32 },

    #[error("duplicate or non-increasing coefficient index {0}")]
    DuplicateIndex(u32),

    #[error("all coefficients are zero")]
    ZeroForm,

    #[error("boundary coefficient a_{0} is zero (x or y divides the form)")]
    BoundaryCoefficientZero(u32),

    #[error("degree {0} is too small (need at least 3)")]
    DegreeTooSmall(u32),

    #[error("matrix has zero determinant")]
    ZeroDeterminant,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("pair ({0}, {1}) is not primitive")]
    NonPrimitivePair(String, String),

    #[error("form has content {0} > 1")]
    NonPrimitiveContent(String),

    #[error("polynomial has repeated roots (zero discriminant)")]
    RepeatedRoots,

    #[error("precision ceiling of {0} bits exceeded")]
    PrecisionCeiling(u32),

    #[error("undecidable at working precision: {0}")]
    Undecidable(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("refused: {0}")]
    Refusal(String),

    #[error("infeasible corpus spec: {0}")]
    InfeasibleSpec(String),

    #[error("internal theorem violation: {0}")]
    TheoremViolation(String),

    #[error("missing input: {0}")]
    MissingInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
