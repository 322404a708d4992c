use thiserror::Error;

/// Errors raised while constructing codes or running the analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spreading construction produced a negative entry at ({row}, {col})")]
    NegativeSpreading { row: usize, col: usize },

    #[error("cannot pair information columns: sender has {sender}, relay has {relay}")]
    InvalidPairing { sender: usize, relay: usize },

    #[error("invalid bisection bracket: {0}")]
    Bracket(String),

    #[error("malformed code document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
