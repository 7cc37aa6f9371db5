//! Errors of the quiver layer.

use thiserror::Error;

use crate::quiver::Violation;

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("invalid colored quiver: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("malformed quiver JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("fission parameter at vertex {0} is zero")]
    ZeroParameter(u32),
    #[error("expected {expected} fission parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("bad color order at vertex {vertex}: {msg}")]
    ColorOrder { vertex: u32, msg: String },
    #[error("symbol {0} is not a generator of the extended double quiver")]
    UnknownSymbol(String),
    #[error(transparent)]
    Algebra(#[from] ncalg::NcError),
}
