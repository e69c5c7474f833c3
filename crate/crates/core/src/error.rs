use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graded space: {0}")]
    InvalidSpace(String),
    #[error("tensor arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("degree violation: {0}")]
    DegreeViolation(String),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("basis is unbounded below the degree cap (degree-0 reduced generator)")]
    UnboundedBasis,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed tree `{text}` at byte {pos}: {msg}")]
    TreeSyntax { text: String, pos: usize, msg: String },
    #[error("structure file: {0}")]
    Structure(String),
    #[error("structure file line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
