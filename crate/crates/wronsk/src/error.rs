use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("the zero rational function is not allowed here")]
    ZeroRatFunc,

    #[error("composition undefined: the substituted denominator vanishes identically")]
    UndefinedComposition,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular over Q(z)")]
    SingularMatrix,

    #[error("tuple is not generic: its Wronskian determinant vanishes identically")]
    NotGeneric,

    #[error("constant map admits no coordinate-change matrix")]
    ConstantMap,

    #[error("degenerate Moebius map: ad - bc = 0")]
    DegenerateMobius,

    #[error("invalid bundle data: {0}")]
    InvalidBundle(String),

    #[error("divisor difference is not the divisor of an n-th power: {0}")]
    DivisorMismatch(String),

    #[error("no generic probe section was supplied")]
    NoGenericProbe,

    #[error("probe sections disagree: {0}")]
    ProbeDisagreement(String),

    #[error("random generation exceeded the retry cap: {0}")]
    RetryCapExceeded(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
