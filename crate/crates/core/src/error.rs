use thiserror::Error;

/// Errors raised by the numerical routines and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    /// An iterative routine stopped before meeting its tolerance.
    #[error("{what} did not converge (value {value}, error estimate {error_estimate}, {iterations} iterations)")]
    NonConvergence {
        what: &'static str,
        value: f64,
        error_estimate: f64,
        iterations: usize,
    },
    /// An integrand or objective produced NaN or an infinity.
    #[error("non-finite value encountered at {at}")]
    NonFinite { at: f64 },
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A parsed object violates one of its invariants.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
