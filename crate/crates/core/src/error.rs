use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The request needs primes beyond the configured sieve ceiling.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// An enclosure left the domain of a function (log of a non-positive
    /// interval, division by an interval containing zero, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
