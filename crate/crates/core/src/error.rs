use std::fmt;

/// Where a bad value was found in an input stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// 1-based line number in a text stream.
    Line(usize),
    /// Byte offset of the offending 8-byte record in a binary stream.
    Offset(u64),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Offset(o) => write!(f, "byte offset {o}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violates the operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request exceeds a documented computational limit.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A stream ran out before the requested number of values was read.
    #[error("truncated input: needed {needed} values, read {read}")]
    Truncated { needed: usize, read: usize },

    /// A stream contained a malformed or out-of-range value.
    #[error("data error at {location}: {message}")]
    Data { location: Location, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialize(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
