//! Error type shared by the algebra layer.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    /// Malformed expression text; `pos` is a byte offset into the input.
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A well-formedness violation (endpoints, arity, unknown symbol).
    #[error("type error: {0}")]
    Type(String),
}
