//! Errors of the family layer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("coefficient family violates an invariant: {0}")]
    Invariant(String),
    #[error("malformed coefficient family: {0}")]
    Format(String),
    #[error("malformed condition '{text}': {reason}")]
    Condition { text: String, reason: String },
    #[error(transparent)]
    Bracket(#[from] dbracket::BracketError),
    #[error(transparent)]
    Quiver(#[from] quiver_core::QuiverError),
    #[error(transparent)]
    Rep(#[from] repscheme::RepError),
    #[error(transparent)]
    Algebra(#[from] ncalg::NcError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
