//! Exact rational matrix representations of Boalch algebras.
//!
//! [`random_rep`] samples arrow blocks and computes the remaining
//! generators so that every relation holds exactly; [`RepOracle`] uses a
//! suite of such representations to test identities by evaluation; the
//! [`kr`] module computes the brackets induced on matrix entries and traces.

pub mod error;
pub mod eval;
pub mod kr;
pub mod matrix;
pub mod oracle;
pub mod rep;

pub use error::RepError;
pub use eval::{eval_slots, TensorValue};
pub use kr::{induced_bracket, trace_bracket_check, InducedBracket, TraceCheck};
pub use matrix::RMat;
pub use oracle::{default_dims, RepOracle, DEFAULT_RANGE, DEFAULT_SEEDS};
pub use rep::{
    dimension_count, random_rep, relation_residuals, trivial_rep, MatrixRep, MAX_ATTEMPTS,
};
