use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Position inside a parsed text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Bad caller input: unknown labels, violated preconditions.
    #[error("input error: {0}")]
    Input(String),
    /// An enumeration or search bound would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("semantic error at {pos}: {msg}")]
    Semantic { pos: Pos, msg: String },
    #[error("unresolved reference `{name}` (known: {known})")]
    Resolution { name: String, known: String },
    #[error("time budget exhausted")]
    Timeout,
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
