use thiserror::Error;

/// Errors produced by the analysis and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature routine failed to meet its tolerance budget.
    #[error("numeric error: {msg} (achieved error estimate {achieved:.3e})")]
    Numeric { msg: String, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
