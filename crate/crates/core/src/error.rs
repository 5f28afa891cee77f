use thiserror::Error;

/// Errors raised by the algebra, the functionals and the verification harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("regular reciprocal undefined at origin: |p0| = {modulus:e}")]
    ReciprocalUndefined { modulus: f64 },

    #[error("transform T_f undefined: |f^c(q)| = {modulus:e}")]
    TransformUndefined { modulus: f64 },

    #[error("radius {0} outside [0, 1)")]
    RadiusOutOfRange(f64),

    #[error("exponent m = {m} outside ({lo}, {hi}]")]
    ExponentOutOfRange { m: f64, lo: f64, hi: f64 },

    #[error("polynomial coefficient d[{index}] = {value} is negative")]
    NegativeCoefficient { index: usize, value: f64 },

    #[error("coefficient class violated at index {index}: {reason}")]
    ClassViolation { index: usize, reason: String },

    #[error("invalid weight function omega_{k}: {reason}")]
    InvalidWeight { k: usize, reason: String },

    #[error("invalid extremal spec: {0}")]
    InvalidSpec(String),

    #[error("no closed form for functional {functional} on family {family}")]
    UndefinedPairing { family: String, functional: String },

    #[error("r = {r} does not exceed the radius {radius}; no witness exists")]
    WitnessBelowRadius { r: f64, radius: f64 },

    #[error("no sharpness witness found for theorem {theorem} at r = {r}")]
    NoWitness { theorem: String, r: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },

    #[error("{0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
