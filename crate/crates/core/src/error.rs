use thiserror::Error;

/// Errors raised by the library. Contract violations are reported as values,
/// never as panics, so the harness can map them onto exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("invalid box: lower bound exceeds upper bound on axis {axis}")]
    InvertedBounds { axis: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("side length {len} exceeds the largest size class bound 2^{k}")]
    LengthOutOfRange { len: String, k: u32 },

    #[error("object does not belong to this checker's class: {0}")]
    ClassMismatch(String),

    #[error("protocol violation: {0}")]
    Protocol(String),

    #[error("scale domain error: {0} lies left of the first breakpoint")]
    ScaleDomain(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid sigma object: {0}")]
    InvalidSigma(String),

    #[error("exact solver limit exceeded: {n} objects (limit {limit})")]
    OracleLimit { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
