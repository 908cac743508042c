use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("cutoff {cutoff} too small: truncated weight {tail:e}")]
    Truncation { cutoff: usize, tail: f64 },
    #[error("channel changed the trace by {drift:e}; raise the quadrature order or cutoff")]
    QuadratureOrder { drift: f64 },
    #[error("out of range: {0}")]
    Range(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] ngstates_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
