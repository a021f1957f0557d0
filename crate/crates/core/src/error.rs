use thiserror::Error;

/// Errors raised by the toolkit's computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular curve: discriminant is zero")]
    Singular,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("additive reduction at p = {0} is not supported")]
    UnsupportedReduction(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("insufficient terms: {0}")]
    InsufficientTerms(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
