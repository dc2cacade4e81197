//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by callers that map failures to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A precondition on the inputs was violated (bad data, bad geometry).
    Validation,
    /// A numerical procedure failed at the requested tolerance.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("path enters an exclusion disk: {0}")]
    Exclusion(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("step size underflow during transport: {0}")]
    StepUnderflow(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("singularity gate rejected the configuration: {0}")]
    Gate(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Dimension(_) | Error::Invalid(_) | Error::Exclusion(_) => {
                ErrorKind::Validation
            }
            Error::Singular(_)
            | Error::StepUnderflow(_)
            | Error::Quadrature(_)
            | Error::Gate(_) => ErrorKind::Numerical,
        }
    }
}
