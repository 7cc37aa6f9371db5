//! The quasi-Poisson and multiplicative moment-map identities.
//!
//! A double bracket is quasi-Poisson when its triple bracket agrees on
//! generators with the fixed element
//!
//! ```text
//! ¼ Σ_s ( c e_s a ⊗ e_s b ⊗ e_s − c e_s a ⊗ e_s ⊗ b e_s
//!       − c e_s ⊗ a e_s b ⊗ e_s + c e_s ⊗ a e_s ⊗ b e_s
//!       − e_s a ⊗ e_s b ⊗ e_s c + e_s a ⊗ e_s ⊗ b e_s c
//!       + e_s ⊗ a e_s b ⊗ e_s c − e_s ⊗ a e_s ⊗ b e_s c ).
//! ```
//!
//! An invertible `Φ = Σ_s Φ_s` is a multiplicative moment map when
//! `⟪Φ_s, a⟫ = ½(a e_s ⊗ Φ_s − e_s ⊗ Φ_s a + aΦ_s ⊗ e_s − Φ_s ⊗ e_s a)` for
//! every generator `a`; the corresponding identity for `Φ_s⁻¹` follows and
//! is checked as a consistency test.

use ncalg::render::{self, sym_name};
use ncalg::{rat, AlgElem, EqualityContext, Names, Sym, Tensor2, Tensor3};
use rayon::prelude::*;

use crate::engine::Engine;
use crate::error::BracketError;
use crate::report::{Report, ReportEntry};

/// The quasi-Poisson target element for `(a, b, c)` over the given vertices.
pub fn qp_rhs(a: &AlgElem, b: &AlgElem, c: &AlgElem, vertices: &[u32]) -> Tensor3 {
    let mut out = Tensor3::zero();
    for &s in vertices {
        let e = AlgElem::idempotent(s);
        let cea = c.mul(&e).mul(a);
        let ce = c.mul(&e);
        let ea = e.mul(a);
        let eb = e.mul(b);
        let be = b.mul(&e);
        let ec = e.mul(c);
        let aeb = a.mul(&e).mul(b);
        let ae = a.mul(&e);
        let bec = b.mul(&e).mul(c);
        let f = Tensor3::from_factors;
        out += &f(&cea, &eb, &e);
        out -= &f(&cea, &e, &be);
        out -= &f(&ce, &aeb, &e);
        out += &f(&ce, &ae, &be);
        out -= &f(&ea, &eb, &ec);
        out += &f(&ea, &e, &bec);
        out += &f(&e, &aeb, &ec);
        out -= &f(&e, &ae, &bec);
    }
    out.scale(&rat(1, 4))
}

/// `½(a e_s ⊗ Φ_s − e_s ⊗ Φ_s a + aΦ_s ⊗ e_s − Φ_s ⊗ e_s a)`.
pub fn moment_rhs(phi: &AlgElem, s: u32, a: &AlgElem) -> Tensor2 {
    let e = AlgElem::idempotent(s);
    let t = a.mul(&e).tensor(phi) - e.tensor(&phi.mul(a)) + a.mul(phi).tensor(&e)
        - phi.tensor(&e.mul(a));
    t.scale(&rat(1, 2))
}

/// `−½(aΦ_s⁻¹ ⊗ e_s − Φ_s⁻¹ ⊗ e_s a + a e_s ⊗ Φ_s⁻¹ − e_s ⊗ Φ_s⁻¹ a)`.
pub fn moment_inverse_rhs(phi_inv: &AlgElem, s: u32, a: &AlgElem) -> Tensor2 {
    let e = AlgElem::idempotent(s);
    let t = a.mul(phi_inv).tensor(&e) - phi_inv.tensor(&e.mul(a)) + a.mul(&e).tensor(phi_inv)
        - e.tensor(&phi_inv.mul(a));
    t.scale(&rat(-1, 2))
}

/// All ordered triples of `gens`.
pub fn ordered_triples(gens: &[Sym]) -> Vec<(Sym, Sym, Sym)> {
    let mut out = Vec::with_capacity(gens.len().pow(3));
    for &a in gens {
        for &b in gens {
            for &c in gens {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Checks the quasi-Poisson identity on one triple of generators.
pub fn check_triple(
    engine: &Engine<'_>,
    ctx: &EqualityContext<'_>,
    (a, b, c): (Sym, Sym, Sym),
    vertices: &[u32],
) -> Result<ReportEntry, BracketError> {
    let (x, y, z) = (AlgElem::sym(a), AlgElem::sym(b), AlgElem::sym(c));
    let lhs = engine.triple(&x, &y, &z)?;
    let rhs = qp_rhs(&x, &y, &z, vertices);
    let d = ctx.equal(&lhs, &rhs);
    let names = &ctx.names;
    let case = format!(
        "({}, {}, {})",
        sym_name(&a, names),
        sym_name(&b, names),
        sym_name(&c, names)
    );
    Ok(ReportEntry::new(
        case,
        render::lin(&lhs, names),
        render::lin(&rhs, names),
        d,
    ))
}

/// Checks the quasi-Poisson identity on every ordered triple of `gens`,
/// in parallel; entries are in lexicographic triple order.
pub fn check_quasi_poisson(
    engine: &Engine<'_>,
    ctx: &EqualityContext<'_>,
    gens: &[Sym],
    vertices: &[u32],
) -> Result<Report, BracketError> {
    let entries = ordered_triples(gens)
        .into_par_iter()
        .map(|t| check_triple(engine, ctx, t, vertices))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(entries))
}

/// One component `Φ_s` of a moment map, with an optional inverse.
#[derive(Clone, Debug)]
pub struct MomentComponent {
    pub vertex: u32,
    pub phi: AlgElem,
    pub inverse: Option<AlgElem>,
}

impl MomentComponent {
    /// `Φ_s = γ_s` with inverse `γ_s⁻¹` for the loops of one color.
    pub fn gamma(color: u16, vertex: u32) -> Self {
        MomentComponent {
            vertex,
            phi: AlgElem::sym(Sym::gamma(color, vertex)),
            inverse: Some(AlgElem::sym(Sym::gamma_inv(color, vertex))),
        }
    }
}

/// Checks the moment-map identity for every component and generator, and
/// the inverse identity where an inverse is given.
pub fn check_moment_map(
    engine: &Engine<'_>,
    ctx: &EqualityContext<'_>,
    phi: &[MomentComponent],
    gens: &[Sym],
) -> Result<Report, BracketError> {
    let mut cases = Vec::new();
    for comp in phi {
        for &g in gens {
            cases.push((comp, g, false));
            if comp.inverse.is_some() {
                cases.push((comp, g, true));
            }
        }
    }
    let entries = cases
        .into_par_iter()
        .map(|(comp, g, inverse)| {
            let a = AlgElem::sym(g);
            let names: &Names = &ctx.names;
            let (lhs, rhs, label) = if inverse {
                let inv = comp.inverse.as_ref().expect("checked above");
                let lhs = engine.dbl(inv, &a)?;
                (
                    lhs,
                    moment_inverse_rhs(inv, comp.vertex, &a),
                    format!("inv Phi_{}", comp.vertex),
                )
            } else {
                let lhs = engine.dbl(&comp.phi, &a)?;
                (
                    lhs,
                    moment_rhs(&comp.phi, comp.vertex, &a),
                    format!("Phi_{}", comp.vertex),
                )
            };
            let d = ctx.equal(&lhs, &rhs);
            let case = format!("<<{label}, {}>>", sym_name(&g, names));
            Ok(ReportEntry::new(
                case,
                render::lin(&lhs, names),
                render::lin(&rhs, names),
                d,
            ))
        })
        .collect::<Result<Vec<_>, BracketError>>()?;
    Ok(Report::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::{parse_alg, parse_t3, ParseCtx};

    fn p(s: &str, ctx: &ParseCtx) -> AlgElem {
        parse_alg(s, ctx).unwrap()
    }

    #[test]
    fn target_on_a_repeated_arrow() {
        // Hand expansion of the eight terms for (v12, v12, v21): only the
        // first (s = 1) and the last (s = 2) survive.
        let ctx = ParseCtx::single(3);
        let r = qp_rhs(
            &p("v12", &ctx),
            &p("v12", &ctx),
            &p("v21", &ctx),
            &[1, 2, 3],
        );
        let hand = parse_t3(
            "1/4 v21 v12 (x) v12 (x) e1 - 1/4 e2 (x) v12 (x) v12 v21",
            &ctx,
        )
        .unwrap();
        assert_eq!(r, hand);
    }

    #[test]
    fn target_with_a_shared_target_vertex() {
        let ctx = ParseCtx::single(3);
        let r = qp_rhs(
            &p("v12", &ctx),
            &p("v31", &ctx),
            &p("v21", &ctx),
            &[1, 2, 3],
        );
        assert_eq!(r, parse_t3("-1/4 v21 v12 (x) e1 (x) v31", &ctx).unwrap());
    }

    #[test]
    fn moment_target_drops_uncomposable_terms() {
        let ctx = ParseCtx::single(3);
        let r = moment_rhs(&p("g2", &ctx), 2, &p("v12", &ctx));
        assert_eq!(
            r,
            ncalg::parse_t2("1/2 v12 (x) g2 + 1/2 v12 g2 (x) e2", &ctx).unwrap()
        );
    }

    #[test]
    fn triples_are_enumerated_in_order() {
        let g = [Sym::v(0, 1, 2), Sym::v(0, 2, 1)];
        let t = ordered_triples(&g);
        assert_eq!(t.len(), 8);
        assert_eq!(t[1], (g[0], g[0], g[1]));
    }
}
