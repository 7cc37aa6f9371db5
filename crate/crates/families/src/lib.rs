//! The parametric double-bracket family on complete quivers.
//!
//! A [`CoefficientFamily`] assigns scalars to the arrow-pair patterns of the
//! complete quiver; [`family_bracket_table`] turns it into a generator
//! table.  Whether the resulting bracket is quasi-Poisson can be decided in
//! two independent ways: by evaluating the coefficient identities of
//! [`conditions`] ([`check_conditions`]) or by computing every triple
//! bracket ([`brute_force_qp`]).  The [`fixtures`] module holds the interval
//! and triangle tables with their expected derived brackets, and
//! [`search`] enumerates admissible families over a finite value grid.

pub mod brute;
pub mod conditions;
pub mod error;
pub mod expr;
pub mod family;
pub mod fixtures;
pub mod search;

pub use brute::{brute_force_holds, brute_force_qp, brute_force_triple};
pub use conditions::{
    check_conditions, instances, ConditionEntry, ConditionReport, Instance, Lemma, Subcase, LEMMAS,
};
pub use error::FamilyError;
pub use family::{family_bracket_table, Class, Coeff, CoefficientFamily};
pub use fixtures::{
    default_chain, fixture_by_name, interval_fixture, triangle_fixture, verify_fixture,
    ExpectedBracket, Fixture, FixtureReport, Group, Identity, LiteralEntry, FIXTURES,
};
pub use search::{free_parameters, random_family, search_admissible, SearchOutcome, ValueGrid};
