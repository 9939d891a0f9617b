use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The rotation system does not describe a simple connected plane graph.
    /// Every violated invariant is listed.
    #[error("invalid embedding:\n  - {}", .0.join("\n  - "))]
    Embedding(Vec<String>),

    /// Malformed or incomplete input (files, labellings, arguments).
    #[error("input error: {0}")]
    Input(String),

    /// The input does not satisfy an operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An enumeration was asked to go beyond its configured size cap.
    #[error("refusing enumeration: {what} = {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    /// The stretching solver ran out of attempts.
    #[error("stretch failed after {attempts} attempts: {reason}")]
    StretchFailed { attempts: usize, reason: String },

    /// An internal invariant was violated; carries a state dump.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn embedding(msg: impl Into<String>) -> Self {
        Error::Embedding(vec![msg.into()])
    }
}
