use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid flat: {0}")]
    InvalidFlat(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("spectral error: {0}")]
    Spectral(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("budget exceeded for block {block}: {free} free positions give {size} assignments, budget is {budget}")]
    Budget {
        block: String,
        free: usize,
        size: u128,
        budget: u128,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}
