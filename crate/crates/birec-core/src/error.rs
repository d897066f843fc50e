use alloc::string::String;

/// Failure modes shared by every analysis in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input violates a precondition of the requested analysis.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input is malformed (bad letter, mismatched dimensions, duplicate transition).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A code contains the empty word.
    #[error("a code may not contain the empty word")]
    EmptyWordInCode,
    /// `first` is a proper prefix of `second`, both in the code.
    #[error("not a prefix code: {first} is a proper prefix of {second}")]
    NotPrefixCode { first: String, second: String },
    /// Enumeration stopped at the configured cap.
    #[error("resource cap exceeded: {what} reached the cap of {cap}")]
    Resource { what: String, cap: usize },
    /// Two independent routes disagreed; this is a bug, never a user error.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
