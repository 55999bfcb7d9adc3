use std::fmt;

/// Error type shared by all compute modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// A basis or grid truncation is too small to represent the result.
    Truncation(String),
    /// A quadrature or iteration failed to converge to the requested accuracy.
    Accuracy(String),
    /// A required precomputed state is missing.
    MissingState(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Truncation(msg) => write!(f, "truncation error: {msg}"),
            Error::Accuracy(msg) => write!(f, "accuracy error: {msg}"),
            Error::MissingState(msg) => write!(f, "missing state: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
