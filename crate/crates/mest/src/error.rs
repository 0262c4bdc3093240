//! Error types shared across the crate.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum MestError {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("basis is not orthonormal (max deviation {0:.3e} from identity Gram matrix)")]
    NonOrthonormalBasis(f64),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("column {0} of the design matrix has zero norm")]
    ZeroColumn(usize),

    #[error("covariance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl MestError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        MestError::InvalidArgument(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        MestError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        MestError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, MestError>;

/// Checks a vector length against the expected ambient dimension.
pub(crate) fn check_dim(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        Err(MestError::DimensionMismatch {
            context,
            expected,
            actual,
        })
    } else {
        Ok(())
    }
}
