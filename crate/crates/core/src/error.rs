use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector norm {norm} is not 1 (tolerance {tolerance:e})")]
    NormViolation { norm: f64, tolerance: f64 },

    #[error("matrix is not Hermitian and traceless (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("degenerate rotation: theta = 0 and phi + psi = 0, so there is no finite period")]
    DegenerateRotation,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("step angles ({phi}, {theta}, {psi}) do not map onto a closed-form generator; need theta = 0 or phi = psi (mod 2pi)")]
    OutsideGeneratorFamily { phi: f64, theta: f64, psi: f64 },

    #[error("no period found below {limit}")]
    PeriodNotFound { limit: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
