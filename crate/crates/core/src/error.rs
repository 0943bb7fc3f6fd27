use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The 2x2 innovation matrix `H P H^T + R` could not be inverted.
    #[error("innovation covariance is singular (determinant {determinant:e})")]
    SingularInnovation { determinant: f64 },

    /// The closed-form angle increment has a zero displacement denominator.
    #[error("angle increment is singular: (v + w) * dt * cos^2(theta) = 0")]
    SingularAngleDelta,

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("config line {line}: {reason}")]
    ConfigParse { line: usize, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}
