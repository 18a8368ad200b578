use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed polynomial: {0}")]
    Malformed(String),
    #[error("coefficient is not an integer: {0}")]
    BadCoefficient(String),
    #[error("coefficient must be nonnegative: {0}")]
    NegativeCoefficient(String),
    #[error("exponent is not a natural number: {0}")]
    BadExponent(String),
    #[error(
        "expected exponent vectors of length {arity}; offending (monomial, length): {offending:?}"
    )]
    ArityMismatch {
        arity: usize,
        offending: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum H10cError {
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("assignment has length {len} but constraints mention variable {max_var}")]
    ArityTooSmall { len: usize, max_var: usize },
    #[error("exponent vector of length {found} where {expected} was required")]
    LengthMismatch { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("threshold {threshold} exceeds horizon {horizon}")]
    ThresholdAfterHorizon { threshold: u64, horizon: u64 },
}

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported checkpoint: {0}")]
    Incompatible(String),
    #[error("corrupt checkpoint at line {line}: {msg}")]
    Corrupt { line: usize, msg: String },
}
