use skdv_algebra::{AlgebraError, PrecisionLost};
use thiserror::Error;

/// Errors shared by the workbench modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("pole: {0} vanishes")]
    Pole(String),
    #[error("degenerate germ: {0}")]
    DegenerateGerm(String),
    #[error("inconclusive after {attempts} attempts: {what}")]
    Inconclusive { what: String, attempts: usize },
    #[error("sequence too short: need at least {need} terms, got {got}")]
    InsufficientData { need: usize, got: usize },
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("series precision exhausted")]
    Precision,
}

impl From<PrecisionLost> for CoreError {
    fn from(_: PrecisionLost) -> Self {
        CoreError::Precision
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
