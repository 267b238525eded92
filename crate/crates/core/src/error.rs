//! Error types shared across the crate.

use thiserror::Error;

/// Failures of exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("mixed cyclotomic orders {left} and {right}")]
    MixedOrder { left: u32, right: u32 },
    #[error("order {to} is not a multiple of {from}")]
    NotAMultiple { from: u32, to: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Everything that can go wrong when building or querying structures.
///
/// Law violations are not errors: verifiers report them as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("coverage gap; missing: {}", missing.join(", "))]
    CoverageGap { missing: Vec<String> },
    #[error("representability fails for a = {a}, v = {v} at b = {b}")]
    RepresentabilityFailure { a: String, v: String, b: String },
    #[error("counit is not universal: {0}")]
    TriangleFailure(String),
    #[error("closedness data missing: {0}")]
    ClosednessDataMissing(String),
    #[error("adjoint data mismatch: {0}")]
    AdjointMismatch(String),
    #[error("morphism is not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), message: message.into() }
    }

    pub fn gap(item: impl Into<String>) -> Self {
        Error::CoverageGap { missing: vec![item.into()] }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
