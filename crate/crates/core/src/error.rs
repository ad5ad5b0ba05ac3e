use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes, dimensions or indices that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// Well-formed input that fails a mathematical precondition.
    #[error("validation failed: {what}{}", .witness.as_ref().map(|w| format!(" (witness: {w})")).unwrap_or_default())]
    Validation { what: String, witness: Option<String> },

    /// Malformed document text.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A result the construction guarantees did not verify.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn validation(what: impl Into<String>, witness: Option<String>) -> Self {
        Error::Validation {
            what: what.into(),
            witness,
        }
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
