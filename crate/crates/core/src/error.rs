use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error estimate {error:e}")]
    NotConverged { estimate: f64, error: f64 },

    #[error("unsupported body: {0}")]
    UnsupportedBody(String),

    #[error("kernel rejected: {0}")]
    KernelRejected(String),

    #[error("principal value did not converge: last Cauchy gap {gap:e}")]
    PrincipalValue { estimate: f64, gap: f64 },

    #[error("evaluator is not valuation-like: {0}")]
    NotValuationLike(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
