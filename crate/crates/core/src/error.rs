use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("precision cap of {cap} bits reached: {what}")]
    Precision { cap: u32, what: String },
    #[error("could not factor {0} within the configured effort")]
    Factoring(String),
    #[error("real commutator parameter: {0}")]
    RealGamma(String),
    #[error("search space too large: {0}")]
    SearchOverflow(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
