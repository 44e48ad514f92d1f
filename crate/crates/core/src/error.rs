use thiserror::Error;

/// Errors raised by the test engines, the oracle and the input readers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its legal domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Brute-force enumeration refused because the universe is too large.
    #[error("universe of C({n},{k}) lists exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, k: usize, cap: u64 },

    /// Malformed input document.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Inconsistent simulation or CLI configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
