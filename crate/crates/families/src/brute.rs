//! Direct verification of the quasi-Poisson identity for a family.
//!
//! The family's arrow table is extended by the Leibniz rules and the triple
//! bracket is compared with its target on every ordered triple of arrows of
//! the complete quiver.  The path algebra of the quiver is free, so equality
//! is decided exactly by comparing coefficients.

use dbracket::{check_quasi_poisson, check_triple, Engine, Report};
use ncalg::{EqualityContext, RuleSet, Sym, Verdict};
use rayon::prelude::*;

use crate::error::FamilyError;
use crate::family::{family_bracket_table, CoefficientFamily};

/// The quasi-Poisson report on all `(n(n−1))³` ordered arrow triples.
pub fn brute_force_qp(cf: &CoefficientFamily) -> Result<Report, FamilyError> {
    let table = family_bracket_table(cf.n, cf)?;
    let engine = Engine::new(&table);
    let empty = RuleSet::new();
    let ctx = EqualityContext::free(&empty);
    let vertices: Vec<u32> = (1..=cf.n).collect();
    Ok(check_quasi_poisson(&engine, &ctx, &cf.arrows(), &vertices)?)
}

/// True if the identity holds on every arrow triple; stops at the first
/// failure.
pub fn brute_force_holds(cf: &CoefficientFamily) -> Result<bool, FamilyError> {
    let table = family_bracket_table(cf.n, cf)?;
    let engine = Engine::new(&table);
    let empty = RuleSet::new();
    let ctx = EqualityContext::free(&empty);
    let vertices: Vec<u32> = (1..=cf.n).collect();
    let arrows = cf.arrows();
    let triples: Vec<(Sym, Sym, Sym)> = dbracket::ordered_triples(&arrows);
    let bad = triples
        .par_iter()
        .map(|t| check_triple(&engine, &ctx, *t, &vertices).map(|e| e.verdict != Verdict::Equal))
        .try_fold(|| false, |acc, r| r.map(|b| acc || b))
        .try_reduce(|| false, |a, b| Ok(a || b))?;
    Ok(!bad)
}

/// Verdict of the identity on one triple of arrows, each `(target, source)`.
pub fn brute_force_triple(
    cf: &CoefficientFamily,
    triple: [(u32, u32); 3],
) -> Result<Verdict, FamilyError> {
    let table = family_bracket_table(cf.n, cf)?;
    let engine = Engine::new(&table);
    let empty = RuleSet::new();
    let ctx = EqualityContext::free(&empty);
    let vertices: Vec<u32> = (1..=cf.n).collect();
    let [a, b, c] = triple.map(|(t, s)| Sym::v(0, t, s));
    Ok(check_triple(&engine, &ctx, (a, b, c), &vertices)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::rat;

    use crate::family::Class;

    #[test]
    fn builtin_family_is_quasi_poisson_and_a_perturbation_is_not() {
        let f = CoefficientFamily::table1();
        assert_eq!(brute_force_qp(&f).unwrap().verdict(), Verdict::Equal);
        let mut g = f.clone();
        g.set(Class::Nu, 3, 1, 2, rat(1, 1));
        assert!(!brute_force_holds(&g).unwrap());
        assert_eq!(
            brute_force_triple(&f, [(1, 2), (2, 3), (3, 1)]).unwrap(),
            Verdict::Equal
        );
    }
}
