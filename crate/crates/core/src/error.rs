use thiserror::Error;

/// Every failure the library can report. Exactness failures are never
/// silently degraded into approximate answers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("logarithmic derivative of zero")]
    LogOfZero,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank must be at least 2, got {0}")]
    BadRank(usize),
    #[error("power {0} of the shift element must be odd")]
    EvenPower(i64),
    #[error("sequence is not degree-increasing at step {step}: direction {direction}")]
    NotDegreeIncreasing { step: usize, direction: usize },
    #[error("empty generating sequence")]
    EmptySequence,
    #[error("parameter vector has length {got}, expected {expected}")]
    ParamLength { got: usize, expected: usize },
    #[error("tuple is not fertile in direction {0}")]
    NotFertile(usize),
    #[error("singular parameter value: {0}")]
    Singular(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("operator is not monic")]
    NotMonic,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("truncation depth {0} too small")]
    DepthTooSmall(i64),
    #[error("interpolation budget exhausted at total degree {0}")]
    BudgetExhausted(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
