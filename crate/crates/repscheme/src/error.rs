//! Errors of the representation layer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("dimension vector has {got} entries but the quiver has {expected} vertices")]
    DimensionCount { expected: usize, got: usize },
    #[error("dimension vector is zero; the empty representation is excluded")]
    ZeroDimension,
    #[error("entry range [{0}, {1}] is empty")]
    EmptyRange(i64, i64),
    #[error("{symbol} stayed singular after {attempts} samples")]
    Singular { symbol: String, attempts: usize },
    #[error("no block for the symbol {0}")]
    UnknownSymbol(String),
    #[error("derived block for {0} disagrees with its defining expression")]
    Inconsistent(String),
    #[error("representation digest mismatch: stored {stored}, computed {computed}")]
    Digest { stored: String, computed: String },
    #[error("malformed representation: {0}")]
    Format(String),
    #[error(transparent)]
    Quiver(#[from] quiver_core::QuiverError),
    #[error(transparent)]
    Bracket(#[from] dbracket::BracketError),
    #[error(transparent)]
    Algebra(#[from] ncalg::NcError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
