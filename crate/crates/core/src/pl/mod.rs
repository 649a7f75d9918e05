//! Exact piecewise-linear homeomorphisms of the line.

mod fixed;
pub mod format;
mod function;
mod map;
mod signature;

pub use fixed::{FixedComponent, FixedSet};
pub use format::{parse_map, parse_map_file};
pub use function::{Piece, PiecewiseLinear, RawPiecewise};
pub use map::{Orientation, PLMap};
pub use signature::{Sign, TypeSignature};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("invalid map: {0}")]
    Validation(String),
    #[error("type signatures are only defined for orientation-preserving maps")]
    NotOrientationPreserving,
    #[error("the identity has no type signature")]
    IdentityMap,
    #[error("the fixed-point set contains an interval")]
    InfiniteFixedSet,
}

/// A text-format error with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
