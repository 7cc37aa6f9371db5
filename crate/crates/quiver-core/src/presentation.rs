//! Derived generators and a rewriting presentation of the Boalch algebra.
//!
//! For each color, walking down the color order, the loops and auxiliary
//! arrows are expressed through the arrows of the double quiver and the
//! inverses of the loops above:
//!
//! ```text
//! γ_k  = e_k + Σ_{j<k} v_kj v_jk − Σ_{ℓ>k} w_kℓ γ_ℓ w_ℓk
//! w_ik = (v_ik + Σ_{j<i} v_ij v_jk − Σ_{ℓ>k} w_iℓ γ_ℓ w_ℓk) γ_k⁻¹      (i < k)
//! w_ki = γ_k⁻¹ (v_ki + Σ_{j<i} v_kj v_ji − Σ_{ℓ>k} w_kℓ γ_ℓ w_ℓi)      (i < k)
//! ```
//!
//! The inverse of the loop at the smallest vertex is a polynomial: it is the
//! corner entry of `w₋ v₊⁻¹ v₋⁻¹ w₊`, and `v₊`, `v₋` are unitriangular.
//!
//! The EXPANDED rule set works over the alphabet of arrows `v` and inverse
//! loops `G_k = γ_k⁻¹` for every non-minimal vertex `k`.  It contains the
//! expansions of `w`, `γ` and the minimal `γ⁻¹`, and for each `G_k` the two
//! localization rules obtained from `G_k P_k = e_k = P_k G_k` by solving for
//! the leading word of `P_k` (the expansion of `γ_k`).  Confluence of the
//! combined system is certified by the critical-pair check; when it holds,
//! normal forms decide equality in the Boalch algebra.

use std::collections::BTreeMap;

use ncalg::{
    critical_pairs, AlgElem, EqualityContext, Kind, Names, Normalizer, Oracle, Rule, RuleSet,
    Strategy, Sym, Word, DEFAULT_STEP_CAP,
};
use num::One;

use crate::boalch::{boalch_relations, Relation};
use crate::error::QuiverError;
use crate::quiver::{ColorClass, ColoredQuiver};

/// A derived generator: a symbol and its defining expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub sym: Sym,
    /// Definition in terms of `v`, `w`, `γ`, `γ⁻¹` of higher vertices.
    pub literal: AlgElem,
}

fn v_or_zero(c: &ColorClass, ci: u16, i: u32, j: u32) -> AlgElem {
    if c.joined(i, j) {
        AlgElem::sym(Sym::v(ci, i, j))
    } else {
        AlgElem::zero()
    }
}

fn s(x: Sym) -> AlgElem {
    AlgElem::sym(x)
}

/// The inverse of the loop at the smallest vertex of a color, as a
/// polynomial in the arrows.
pub fn min_gamma_inverse(c: &ColorClass, ci: u16) -> AlgElem {
    let order = c.order();
    let a = order[0];
    // Row `a` of v₊⁻¹ and column `a` of v₋⁻¹.
    let mut x: Vec<AlgElem> = Vec::with_capacity(order.len());
    let mut y: Vec<AlgElem> = Vec::with_capacity(order.len());
    for (pj, &j) in order.iter().enumerate() {
        if pj == 0 {
            x.push(AlgElem::idempotent(a));
            y.push(AlgElem::idempotent(a));
            continue;
        }
        let mut xj = AlgElem::zero();
        let mut yj = AlgElem::zero();
        for (pi, &i) in order[..pj].iter().enumerate() {
            xj -= &x[pi].mul(&v_or_zero(c, ci, i, j));
            yj -= &v_or_zero(c, ci, j, i).mul(&y[pi]);
        }
        x.push(xj);
        y.push(yj);
    }
    x.iter()
        .zip(&y)
        .fold(AlgElem::zero(), |acc, (xj, yj)| acc + xj.mul(yj))
}

/// Literal definitions of the derived generators of every color, in
/// dependency order (each definition uses only symbols defined earlier, plus
/// arrows and inverse loops).
pub fn derived_generators(q: &ColoredQuiver) -> Result<Vec<Definition>, QuiverError> {
    q.ensure_valid()?;
    let mut out = Vec::new();
    for (ci, c) in q.colors.iter().enumerate() {
        let ci = ci as u16;
        let order = c.order();
        let m = order.len();
        let w = |i: u32, j: u32| s(Sym::w(ci, i, j));
        let g = |i: u32| s(Sym::gamma(ci, i));
        let gi = |i: u32| s(Sym::gamma_inv(ci, i));
        for pk in (0..m).rev() {
            let k = order[pk];
            let mut gamma = AlgElem::idempotent(k);
            for &j in &order[..pk] {
                gamma += &v_or_zero(c, ci, k, j).mul(&v_or_zero(c, ci, j, k));
            }
            for &l in &order[pk + 1..] {
                gamma -= &w(k, l).mul(&g(l)).mul(&w(l, k));
            }
            out.push(Definition {
                sym: Sym::gamma(ci, k),
                literal: gamma,
            });
            for pi in 0..pk {
                let i = order[pi];
                let mut up = v_or_zero(c, ci, i, k);
                let mut down = v_or_zero(c, ci, k, i);
                for &j in &order[..pi] {
                    up += &v_or_zero(c, ci, i, j).mul(&v_or_zero(c, ci, j, k));
                    down += &v_or_zero(c, ci, k, j).mul(&v_or_zero(c, ci, j, i));
                }
                for &l in &order[pk + 1..] {
                    up -= &w(i, l).mul(&g(l)).mul(&w(l, k));
                    down -= &w(k, l).mul(&g(l)).mul(&w(l, i));
                }
                out.push(Definition {
                    sym: Sym::w(ci, i, k),
                    literal: up.mul(&gi(k)),
                });
                out.push(Definition {
                    sym: Sym::w(ci, k, i),
                    literal: gi(k).mul(&down),
                });
            }
        }
        out.push(Definition {
            sym: Sym::gamma_inv(ci, order[0]),
            literal: min_gamma_inverse(c, ci),
        });
    }
    Ok(out)
}

/// `γγ⁻¹ → e` and `γ⁻¹γ → e` for every loop.
pub fn cancellation_rules(q: &ColoredQuiver) -> RuleSet {
    let mut rs = RuleSet::new();
    for (ci, c) in q.colors.iter().enumerate() {
        for &v in &c.vertices {
            let g = Sym::gamma(ci as u16, v);
            let gi = Sym::gamma_inv(ci as u16, v);
            for pat in [[g, gi], [gi, g]] {
                rs.push(Rule::Subword {
                    lhs: Word::from_letters(pat).expect("loops compose"),
                    rhs: AlgElem::idempotent(v),
                })
                .expect("cancellation rules are well typed");
            }
        }
    }
    rs
}

/// Residual of a relation after a rewriting pass.
#[derive(Clone, Debug)]
pub struct Residual {
    pub relation: Relation,
    pub residual: AlgElem,
    pub fixpoint: bool,
}

/// A rewriting presentation of the Boalch algebra of a colored quiver.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub quiver: ColoredQuiver,
    /// Literal derived-generator definitions, in dependency order.
    pub definitions: Vec<Definition>,
    /// Cancellation rules only.
    pub structural: RuleSet,
    /// Expansions, localization and cancellation rules.
    pub expanded: RuleSet,
    /// Normal forms of the derived generators over `v` and `G_k`.
    pub expansions: BTreeMap<Sym, AlgElem>,
    /// True if the expanded rule set was certified confluent.
    pub expanded_complete: bool,
    /// Number of ambiguities examined by the confluence check.
    pub critical_pairs_checked: usize,
    pub step_cap: usize,
}

impl Presentation {
    /// Builds the presentation and runs the confluence check.
    pub fn new(q: &ColoredQuiver) -> Result<Self, QuiverError> {
        Self::with_step_cap(q, DEFAULT_STEP_CAP)
    }

    pub fn with_step_cap(q: &ColoredQuiver, step_cap: usize) -> Result<Self, QuiverError> {
        let definitions = derived_generators(q)?;
        let structural = cancellation_rules(q);
        let mut expanded = RuleSet::new();
        let mut expansions = BTreeMap::new();
        let mut all_fixpoint = true;
        for d in &definitions {
            let n = Normalizer::new(&expanded, step_cap).elem(&d.literal);
            all_fixpoint &= n.fixpoint;
            let nf = n.value;
            expanded.push(Rule::Expand {
                sym: d.sym,
                rhs: nf.clone(),
            })?;
            expansions.insert(d.sym, nf.clone());
            // A loop at a non-minimal vertex gets localization rules for its
            // inverse, which stays a letter of the alphabet.
            if d.sym.kind == Kind::Gamma && !is_min(q, d.sym) {
                for r in localization_rules(d.sym, &nf) {
                    expanded.push(r)?;
                }
            }
        }
        expanded.extend_from(&structural)?;
        let report = critical_pairs(&expanded, step_cap);
        let expanded_complete = all_fixpoint && report.is_locally_confluent();
        Ok(Presentation {
            quiver: q.clone(),
            definitions,
            structural,
            expanded,
            expansions,
            expanded_complete,
            critical_pairs_checked: report.checked,
            step_cap,
        })
    }

    /// An equality context over this presentation.
    pub fn equality_context<'a>(
        &'a self,
        oracle: Option<&'a dyn Oracle>,
        chain: Vec<Strategy>,
    ) -> EqualityContext<'a> {
        EqualityContext {
            structural: &self.structural,
            expanded: Some(&self.expanded),
            expanded_complete: self.expanded_complete,
            oracle,
            chain,
            step_cap: self.step_cap,
            names: self.names(),
        }
    }

    pub fn names(&self) -> Names {
        self.quiver.names()
    }

    /// EXPANDED normal form of an element.
    pub fn normal_form(&self, x: &AlgElem) -> (AlgElem, bool) {
        let n = Normalizer::new(&self.expanded, self.step_cap).elem(x);
        (n.value, n.fixpoint)
    }

    /// Residuals `lhs − rhs` of the decomposed Boalch relations under the
    /// EXPANDED rules.
    pub fn expanded_residuals(&self) -> Result<Vec<Residual>, QuiverError> {
        let rels = boalch_relations(&self.quiver)?;
        let mut nf = Normalizer::new(&self.expanded, self.step_cap);
        Ok(rels
            .decomposed
            .into_iter()
            .map(|r| {
                let n = nf.elem(&r.difference());
                Residual {
                    relation: r,
                    residual: n.value,
                    fixpoint: n.fixpoint,
                }
            })
            .collect())
    }

    /// Two-stage formal residuals; see [`formal_residuals`].
    pub fn formal_residuals(&self) -> Result<Vec<Residual>, QuiverError> {
        formal_residuals(&self.quiver, self.step_cap)
    }
}

/// Residuals of the decomposed Boalch relations after substituting the
/// literal definitions in two stages: first the auxiliary arrows (with loop
/// cancellation), then the loops.  This is a formal check that uses no
/// localization rule and is valid for every colored quiver.
pub fn formal_residuals(q: &ColoredQuiver, step_cap: usize) -> Result<Vec<Residual>, QuiverError> {
    let definitions = derived_generators(q)?;
    let structural = cancellation_rules(q);
    let mut stage_a = RuleSet::new();
    for d in definitions.iter().filter(|d| d.sym.kind == Kind::W) {
        stage_a.push(Rule::Expand {
            sym: d.sym,
            rhs: d.literal.clone(),
        })?;
    }
    stage_a.extend_from(&structural)?;
    let mut nf_a = Normalizer::new(&stage_a, step_cap);
    let mut stage_b = RuleSet::new();
    for d in definitions.iter().filter(|d| d.sym.kind == Kind::Gamma) {
        stage_b.push(Rule::Expand {
            sym: d.sym,
            rhs: nf_a.elem(&d.literal).value,
        })?;
    }
    stage_b.extend_from(&structural)?;
    let mut nf_b = Normalizer::new(&stage_b, step_cap);
    let rels = boalch_relations(q)?;
    Ok(rels
        .decomposed
        .into_iter()
        .map(|r| {
            let a = nf_a.elem(&r.difference());
            let b = nf_b.elem(&a.value);
            Residual {
                relation: r,
                residual: b.value,
                fixpoint: a.fixpoint && b.fixpoint,
            }
        })
        .collect())
}

fn is_min(q: &ColoredQuiver, g: Sym) -> bool {
    q.color(g.color).order().first() == Some(&g.target)
}

/// `G·LM → (1/c)(e − G·(P − c·LM))` and `LM·G → (1/c)(e − (P − c·LM)·G)`
/// where `c·LM` is the leading term of `P`, the normal form of `γ`.
fn localization_rules(gamma: Sym, p: &AlgElem) -> Vec<Rule> {
    let k = gamma.target;
    let g = Sym::gamma_inv(gamma.color, k);
    let (lm, c) = p
        .leading()
        .map(|(w, c)| (w.clone(), c.clone()))
        .expect("loop expansions are nonzero");
    let rest = p - &AlgElem::term(lm.clone(), c.clone());
    let inv_c = ncalg::Q::one() / &c;
    let ga = AlgElem::sym(g);
    let e = AlgElem::idempotent(k);
    let left_rhs = (&e - &ga.mul(&rest)).scale(&inv_c);
    let right_rhs = (&e - &rest.mul(&ga)).scale(&inv_c);
    let left = Word::letter(g)
        .concat(&lm)
        .expect("leading word is a loop at k");
    let right = lm
        .concat(&Word::letter(g))
        .expect("leading word is a loop at k");
    if left == right {
        debug_assert!(rest.is_zero());
        return vec![Rule::Subword {
            lhs: left,
            rhs: left_rhs,
        }];
    }
    vec![
        Rule::Subword {
            lhs: left,
            rhs: left_rhs,
        },
        Rule::Subword {
            lhs: right,
            rhs: right_rhs,
        },
    ]
}
