use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("unsupported dimension n = {n}")]
    UnsupportedDimension { n: usize },
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("Macaulay denominator minor is singular")]
    DenominatorSingular,
    #[error("Macaulay matrix of size {size} exceeds the {limit} limit")]
    MatrixTooLarge { size: usize, limit: usize },
    #[error("only {found} of {needed} interpolation nodes produced a resultant")]
    InterpolationFailed { needed: usize, found: usize },
    #[error("binary form has an isotropic eigenvector; it cannot be normalized")]
    IsotropicRoot,
    #[error("no eigenvector recovered for lambda = {re}{im:+}i")]
    RecoveryFailed { re: f64, im: f64 },
    #[error("Fermat coefficient a[{index}] is zero")]
    ZeroCoefficient { index: usize },
    #[error("constructed eigenvector is isotropic")]
    NormZero,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("ratio mismatch between sample 0 ({first}) and sample {index} ({other})")]
    RatioMismatch {
        index: usize,
        first: String,
        other: String,
    },
    #[error("restriction to the isotropic conic vanishes identically")]
    DegenerateRestriction,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
