use thiserror::Error;

/// Errors raised by constructors and checkers.
///
/// A failed *property* is never an error: checkers report it through a
/// [`Verdict`](crate::Verdict). Errors are reserved for inputs that cannot be
/// evaluated at all.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arrays of the wrong shape, indices out of range, empty carriers.
    #[error("malformed input: {0}")]
    Structural(String),

    /// The operation's precondition does not hold for this input.
    #[error("precondition violated ({what}): {detail}")]
    Precondition { what: String, detail: String },

    /// Two objects that must share a carrier do not.
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    /// A size guard was exceeded.
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    Guard {
        what: String,
        actual: usize,
        limit: usize,
    },

    /// Exact arithmetic left its domain (division by zero, wrong element tag).
    #[error("domain error: {0}")]
    Domain(String),

    /// JSON parsing or name resolution failed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Unknown registry or reference name.
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precondition {
            what: what.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
