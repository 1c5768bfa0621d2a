use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(usize),
    #[error("polynomial has {0} non-real critical point(s)")]
    NonRealCriticalPoints(usize),
    #[error("polynomial has {0} non-real critical value(s), counted with degree")]
    NonRealCriticalValues(usize),
    #[error("critical point of multiplicity {0} (not Morse); only pure powers a(x-b)^n + c are accepted")]
    NonMorse(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero start vector")]
    ZeroVector,
    #[error("empty group of cycles")]
    EmptyGroup,
    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("operator {0} is not invertible")]
    SingularOperator(usize),
    #[error("unsupported exponent e = {0}")]
    UnsupportedExponent(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("orbit class routes disagree: decomposability gives {by_ideal}, spans give {by_span}")]
    ClassMismatch { by_ideal: String, by_span: String },
}

pub type Result<T> = std::result::Result<T, Error>;
