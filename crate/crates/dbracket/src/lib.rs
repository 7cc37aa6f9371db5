//! Double brackets on path algebras.
//!
//! A [`BracketTable`] assigns values to generator pairs; the [`Engine`]
//! extends it to arbitrary elements by the outer and inner Leibniz rules,
//! handles inverse loops and defined symbols, and computes triple brackets.
//! The [`qp`] module checks the quasi-Poisson and moment-map identities and
//! produces per-case [`Report`]s; [`fold`] re-expresses expanded results in
//! the derived generators for display.

pub mod engine;
pub mod error;
pub mod fold;
pub mod qp;
pub mod report;
pub mod table;

pub use engine::Engine;
pub use error::BracketError;
pub use fold::{fold, normal_form};
pub use qp::{
    check_moment_map, check_quasi_poisson, check_triple, moment_inverse_rhs, moment_rhs,
    ordered_triples, qp_rhs, MomentComponent,
};
pub use report::{Report, ReportEntry};
pub use table::{window_for, BracketTable, WindowCorrection};
