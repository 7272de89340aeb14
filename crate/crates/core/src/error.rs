use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("{what} of size {size} exceeds bound {bound}")]
    BoundExceeded { what: &'static str, size: u128, bound: u128 },
    #[error("submodule is not proper")]
    NotProper,
    #[error("quotient by the whole ring")]
    NotProperIdeal,
    #[error("division by zero")]
    DivisionByZero,
    #[error("modules are over different rings")]
    RingMismatch,
    #[error("factorization outside supported range: {0}")]
    RequiresFactorization(String),
    #[error("unknown law: {0}")]
    UnknownLaw(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, size: impl Into<u128>, bound: impl Into<u128>) -> Self {
        Error::BoundExceeded { what, size: size.into(), bound: bound.into() }
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
