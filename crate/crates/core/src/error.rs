use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for series of length {len}")]
    Index { index: usize, len: usize },
    #[error("invalid index range {start}..={end} for series of length {len}")]
    Range { start: usize, end: usize, len: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
    #[error("line {line}: {message}")]
    Input { line: usize, message: String },
    #[error("contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
