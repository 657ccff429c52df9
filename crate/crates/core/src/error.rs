//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input while parsing an edge list or graph CSV.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A precondition on operation arguments was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested computation exceeds a configured combinatorial budget.
    /// Distinct from `Domain` so callers can map it to its own exit code.
    #[error("budget exceeded: {what} requires {required} > limit {limit}")]
    Budget {
        what: String,
        required: u128,
        limit: u128,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
