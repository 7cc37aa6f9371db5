//! Errors of the bracket layer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BracketError {
    #[error("missing table entry for the pair ({0}, {1})")]
    MissingEntry(String, String),
    #[error("table entries for ({0}, {1}) and ({1}, {0}) are not cyclically antisymmetric")]
    NotAntisymmetric(String, String),
    #[error("table entry for ({0}, {1}) involves an idempotent and must vanish")]
    IdempotentEntry(String, String),
    #[error("bracket recursion exceeded depth {0} (cyclic symbol definitions?)")]
    Depth(usize),
    #[error("malformed bracket table: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] ncalg::NcError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
