//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (negative distance, non-positive frequency, negative sigma, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A valid-looking request has no answer in the configured tables
    /// (e.g. an ABG model for a LOS scenario) or a config file violates
    /// its schema.
    #[error("configuration error: {0}")]
    Config(String),

    /// A fitting dataset cannot identify the requested parameters
    /// (rank-deficient design, too few samples, no usable breakpoint).
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),

    /// The optimizer produced parameters outside the model's admissible
    /// range (e.g. a non-positive path-loss exponent).
    #[error("fit failure: {0}")]
    FitFailure(String),

    /// A data file could not be read or parsed.
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateDesign(msg.into())
    }

    pub fn fit_failure(msg: impl Into<String>) -> Self {
        Error::FitFailure(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Error::Io(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
