use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Bad arguments or malformed input.
    #[error("usage error: {0}")]
    Usage(String),
    /// A configured cap (ground set size, number of lattice points) was hit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A mathematical invariant that must hold for valid input was violated.
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
