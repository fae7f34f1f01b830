use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator X[{row},{col}] lies outside a {rows}x{cols} quantum matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("index set {set} has {found} elements, expected {expected}")]
    WrongCardinality { set: String, found: usize, expected: usize },
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("index set {set} is not contained in {within}")]
    ContainmentViolated { set: String, within: String },
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("twist level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: i64, found: i64 },
    #[error("twist level {level} exceeds the configured bound {bound}")]
    LevelOutOfBound { level: i64, bound: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pattern set is not closed under {0}")]
    ClosureViolation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
