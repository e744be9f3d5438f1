use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An identity that must hold by construction failed. Always a bug.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("operator is not invertible on this module: {0}")]
    NotInvertible(String),

    #[error("degree bound {bound} exceeded: {what}")]
    DegreeBoundExceeded { bound: usize, what: String },

    #[error("truncation unstable: {0}")]
    Unstable(String),

    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn verify(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
