use thiserror::Error;

use crate::numeric::ComplexMatrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph6 input: {0}")]
    Format(String),

    #[error("validation error: {0}")]
    Validation(String),

    /// A caller-supplied eigenpair or eigenvector does not meet the
    /// preconditions of a construction.
    #[error("bad input eigenpair: {0}")]
    InputEigenpair(String),

    /// A constructed tensor eigenpair failed its residual check. This is an
    /// internal inconsistency and is never silently ignored.
    #[error("certification failed for lambda = {lambda}: residual {residual:.3e}")]
    Certification { lambda: String, residual: f64 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{0} is not an eigenvalue of the blowup")]
    NotAnEigenvalue(f64),

    #[error("eigensolver did not converge after {iterations} iterations (dimension {})", matrix.dim())]
    NonConvergence {
        iterations: usize,
        matrix: Box<ComplexMatrix>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
