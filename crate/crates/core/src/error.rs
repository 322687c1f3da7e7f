use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A configured size cap was exceeded. `partial` carries whatever
    /// progress count was reached (e.g. closure rank) before stopping.
    #[error("resource cap exceeded: {what} (limit {limit}){}", partial.map(|p| format!(", partial rank {p}")).unwrap_or_default())]
    Resource {
        what: String,
        limit: usize,
        partial: Option<usize>,
    },

    /// An identity that is proved to hold did not. Signals a convention bug.
    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
