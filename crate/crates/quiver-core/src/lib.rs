//! Colored quivers and Boalch algebras.
//!
//! A colored quiver is given by its vertices `1..=n` and a list of color
//! classes, each a vertex subset with an ordered partition; within a color
//! the underlying graph is complete k-partite.  This crate validates such
//! data, builds the double and extended double quivers, writes down the
//! Boalch and fission relations, and turns the Boalch algebra into a
//! rewriting presentation used for exact equality decisions.

pub mod boalch;
pub mod error;
pub mod presentation;
pub mod quiver;

pub use boalch::{boalch_relations, fission_relations, unit_parameters, BoalchRelations, Relation};
pub use error::QuiverError;
pub use presentation::{
    cancellation_rules, derived_generators, formal_residuals, min_gamma_inverse, Definition,
    Presentation, Residual,
};
pub use quiver::{
    complete, double_quiver, extended_double, interval, triangle, validate, ColorClass,
    ColoredQuiver, Edge, Violation, ViolationKind,
};
