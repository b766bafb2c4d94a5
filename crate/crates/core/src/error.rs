use thiserror::Error;

/// Errors raised by parsing, shape checks and elimination preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix or vector text could not be parsed. Lines and columns are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// A single element token is malformed. `position` is the 0-based character offset.
    #[error("malformed element at position {position}: {message}")]
    Malformed { position: usize, message: String },
    /// Well-formed text denoting a value outside the field.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("row index {index} out of range for a matrix with {len} rows")]
    Bounds { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("column {col} has no nonzero entry at or below row {row}")]
    PivotNotFound { row: usize, col: usize },
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
