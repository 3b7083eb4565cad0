use thiserror::Error;

/// Errors raised by the numeric kernels and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("{op}: argument outside domain: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{what}: size {got} exceeds limit {limit}")]
    Capacity { what: &'static str, limit: usize, got: usize },

    #[error("{op}: series did not reach a certified tail within {terms} terms")]
    NoConvergence { op: &'static str, terms: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
