use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates the documented precondition of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight types differ: {0:?} vs {1:?}")]
    WeightMismatch(Vec<u32>, Vec<u32>),

    #[error("parse error: {0}")]
    Parse(String),

    /// Completion or normal-word enumeration hit the length cap without a verdict.
    #[error("length cap {cap} exceeded ({detail})")]
    CapExceeded { cap: usize, detail: String },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("algebra is not selfinjective")]
    NotSelfinjective,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
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

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
