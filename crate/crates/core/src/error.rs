use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one failure class of
/// the command-line surface (see [`crate::cli`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An invalid Lie type, rank or node set.
    #[error("configuration error: {0}")]
    Config(String),
    /// Arguments of mismatched shape, or unparsable input.
    #[error("usage error: {0}")]
    Usage(String),
    /// A value outside the domain of a partial function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A request for a closed form that does not exist for the case.
    #[error("unsupported case: {0}")]
    Unsupported(String),
    /// Broken internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
