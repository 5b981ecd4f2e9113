use std::fmt;

use thiserror::Error;

/// Errors raised by the arithmetic, tree, word and metric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in Z[tau] arithmetic")]
    Overflow,
    #[error("no basic-move pattern at path `{0}`")]
    InvalidMove(String),
    #[error("path `{0}` does not address a caret")]
    InvalidPath(String),
    #[error("point {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("source tree has {source_leaves} leaves but target tree has {target_leaves}")]
    LeafMismatch {
        source_leaves: usize,
        target_leaves: usize,
    },
    #[error("right spine of the {0} tree contains a y-caret")]
    SpineNotNormalized(&'static str),
    #[error("radius {radius} exceeds the configured cap {cap}")]
    CapExceeded { radius: u32, cap: u32 },
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A syntax error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: Option<char>,
}

impl ParseError {
    pub(crate) fn new(position: usize, expected: impl Into<String>, found: Option<char>) -> Self {
        ParseError {
            position,
            expected: expected.into(),
            found,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.found {
            Some(c) => write!(
                f,
                "parse error at position {}: expected {}, found `{}`",
                self.position, self.expected, c
            ),
            None => write!(
                f,
                "parse error at position {}: expected {}, found end of input",
                self.position, self.expected
            ),
        }
    }
}
