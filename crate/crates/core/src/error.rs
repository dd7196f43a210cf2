use thiserror::Error;

/// Errors raised by the library. Verification mismatches are not errors;
/// they are reported through [`crate::hilton_milnor::Mismatch`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    /// A bracket monomial is longer than the basis table covers.
    #[error("length bound exceeded: monomial of length {length} but table covers lengths <= {max_len}")]
    LengthBound { length: usize, max_len: usize },

    #[error("arity mismatch: expected {expected} generator variables, found {found}")]
    Arity { expected: usize, found: usize },

    /// Two elements refer to different basis tables.
    #[error("basis mismatch: {0}")]
    Basis(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
