use thiserror::Error;

/// Errors raised by the matrix kernels and the constructions built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian: defect {defect:e} exceeds {allowed:e}")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("matrix is not unitary: defect {defect:e} exceeds {allowed:e}")]
    NotUnitary { defect: f64, allowed: f64 },

    #[error("matrix is not positive semi-definite: min eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("partition error: {0}")]
    Partition(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure at stage `{stage}`: {detail}")]
    InternalConsistency { stage: String, detail: String },

    #[error("no counterexample found in {trials} trials")]
    NotFound { trials: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(stage: &str, detail: impl Into<String>) -> Self {
        Error::InternalConsistency {
            stage: stage.to_string(),
            detail: detail.into(),
        }
    }
}
