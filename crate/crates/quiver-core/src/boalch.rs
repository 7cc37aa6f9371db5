//! Boalch relations `v₋v₊ = w₊γw₋` (one per color), their decomposition
//! under the idempotents, and fission relations.

use std::collections::BTreeMap;

use ncalg::{rat, AlgElem, Sym, Q};
use num::Zero;

use crate::error::QuiverError;
use crate::quiver::{ColorClass, ColoredQuiver};

/// A relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// Color index (Boalch) or `None` (fission).
    pub color: Option<u16>,
    /// `(i, j)` for a decomposed component `e_i(·)e_j`, or the vertex of a
    /// fission relation as `(s, s)`.
    pub component: Option<(u32, u32)>,
    pub lhs: AlgElem,
    pub rhs: AlgElem,
}

impl Relation {
    /// `lhs - rhs`.
    pub fn difference(&self) -> AlgElem {
        &self.lhs - &self.rhs
    }
}

/// Both forms of the Boalch relations.
#[derive(Clone, Debug)]
pub struct BoalchRelations {
    /// One relation per color.
    pub full: Vec<Relation>,
    /// One relation per color and ordered pair of the color's vertices.
    pub decomposed: Vec<Relation>,
}

fn unit(c: &ColorClass) -> AlgElem {
    c.vertices
        .iter()
        .map(|&s| AlgElem::idempotent(s))
        .fold(AlgElem::zero(), |a, b| a + b)
}

/// `1 + Σ_{i<j} x_ij` (upper) or `1 + Σ_{i>j} x_ij` (lower) in the color
/// order, where `x` is `v` (only between different parts) or `w`.
fn triangular(c: &ColorClass, ci: u16, upper: bool, v_kind: bool) -> AlgElem {
    let order = c.order();
    let mut out = unit(c);
    for (a, &i) in order.iter().enumerate() {
        for (b, &j) in order.iter().enumerate() {
            if (upper && a < b) || (!upper && a > b) {
                if v_kind {
                    if c.joined(i, j) {
                        out += &AlgElem::sym(Sym::v(ci, i, j));
                    }
                } else {
                    out += &AlgElem::sym(Sym::w(ci, i, j));
                }
            }
        }
    }
    out
}

/// The Boalch relation of every color and its idempotent decomposition.
pub fn boalch_relations(q: &ColoredQuiver) -> Result<BoalchRelations, QuiverError> {
    q.ensure_valid()?;
    let mut full = Vec::new();
    let mut decomposed = Vec::new();
    for (ci, c) in q.colors.iter().enumerate() {
        let ci = ci as u16;
        let v_minus = triangular(c, ci, false, true);
        let v_plus = triangular(c, ci, true, true);
        let w_plus = triangular(c, ci, true, false);
        let w_minus = triangular(c, ci, false, false);
        let gamma = c
            .vertices
            .iter()
            .map(|&s| AlgElem::sym(Sym::gamma(ci, s)))
            .fold(AlgElem::zero(), |a, b| a + b);
        let lhs = v_minus.mul(&v_plus);
        let rhs = w_plus.mul(&gamma).mul(&w_minus);
        let order = c.order();
        for &i in &order {
            for &j in &order {
                decomposed.push(Relation {
                    color: Some(ci),
                    component: Some((i, j)),
                    lhs: lhs.project(i, j),
                    rhs: rhs.project(i, j),
                });
            }
        }
        full.push(Relation {
            color: Some(ci),
            component: None,
            lhs,
            rhs,
        });
    }
    Ok(BoalchRelations { full, decomposed })
}

/// Fission relations: at each vertex `s`, the ordered product of the loops
/// `γ_{c,s}` over the colors containing `s` equals `q_s e_s`.
///
/// `vertex_orders` optionally gives, per vertex, the order of the colors in
/// the product; the default is the declaration order of the colors.
pub fn fission_relations(
    q: &ColoredQuiver,
    params: &[Q],
    vertex_orders: Option<&BTreeMap<u32, Vec<u16>>>,
) -> Result<Vec<Relation>, QuiverError> {
    q.ensure_valid()?;
    if params.len() != q.n as usize {
        return Err(QuiverError::ParameterCount {
            expected: q.n as usize,
            got: params.len(),
        });
    }
    let mut out = Vec::new();
    for s in 1..=q.n {
        let qs = &params[s as usize - 1];
        if qs.is_zero() {
            return Err(QuiverError::ZeroParameter(s));
        }
        let present: Vec<u16> = (0..q.colors.len() as u16)
            .filter(|&c| q.color(c).vertices.contains(&s))
            .collect();
        let colors = match vertex_orders.and_then(|m| m.get(&s)) {
            Some(order) => {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != present {
                    return Err(QuiverError::ColorOrder {
                        vertex: s,
                        msg: format!("expected a permutation of colors {present:?}, got {order:?}"),
                    });
                }
                order.clone()
            }
            None => present,
        };
        let lhs = colors.iter().fold(AlgElem::idempotent(s), |acc, &c| {
            acc.mul(&AlgElem::sym(Sym::gamma(c, s)))
        });
        let rhs = AlgElem::idempotent(s).scale(qs);
        out.push(Relation {
            color: None,
            component: Some((s, s)),
            lhs,
            rhs,
        });
    }
    Ok(out)
}

/// Fission parameters all equal to one.
pub fn unit_parameters(q: &ColoredQuiver) -> Vec<Q> {
    vec![rat(1, 1); q.n as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{interval, triangle};
    use ncalg::{parse_alg, render};

    #[test]
    fn triangle_decomposes_into_nine_identities() {
        let t = triangle();
        let r = boalch_relations(&t).unwrap();
        assert_eq!(r.full.len(), 1);
        assert_eq!(r.decomposed.len(), 9);
        let ctx = t.parse_ctx();
        // Independently typed component identities.
        let expected = [
            ((1, 1), "e1", "g1 + w12 g2 w21 + w13 g3 w31"),
            ((1, 2), "v12", "w12 g2 + w13 g3 w32"),
            ((1, 3), "v13", "w13 g3"),
            ((2, 1), "v21", "g2 w21 + w23 g3 w31"),
            ((2, 2), "e2 + v21 v12", "g2 + w23 g3 w32"),
            ((2, 3), "v21 v13 + v23", "w23 g3"),
            ((3, 1), "v31", "g3 w31"),
            ((3, 2), "v32 + v31 v12", "g3 w32"),
            ((3, 3), "e3 + v31 v13 + v32 v23", "g3"),
        ];
        for (comp, l, rr) in expected {
            let rel = r
                .decomposed
                .iter()
                .find(|x| x.component == Some(comp))
                .unwrap();
            assert_eq!(
                rel.lhs,
                parse_alg(l, &ctx).unwrap(),
                "lhs {comp:?}: {}",
                render::plain(&rel.lhs)
            );
            assert_eq!(
                rel.rhs,
                parse_alg(rr, &ctx).unwrap(),
                "rhs {comp:?}: {}",
                render::plain(&rel.rhs)
            );
        }
    }

    #[test]
    fn interval_decomposes_into_four_identities() {
        let r = boalch_relations(&interval()).unwrap();
        assert_eq!(r.decomposed.len(), 4);
        let ctx = interval().parse_ctx();
        let c22 = r
            .decomposed
            .iter()
            .find(|x| x.component == Some((2, 2)))
            .unwrap();
        assert_eq!(c22.lhs, parse_alg("e2 + v21 v12", &ctx).unwrap());
        assert_eq!(c22.rhs, parse_alg("g2", &ctx).unwrap());
    }

    #[test]
    fn single_vertex_forces_gamma_to_be_the_unit() {
        let q = crate::quiver::complete(1);
        let r = boalch_relations(&q).unwrap();
        assert_eq!(r.full[0].lhs, AlgElem::idempotent(1));
        assert_eq!(r.full[0].rhs, AlgElem::sym(Sym::gamma(0, 1)));
    }

    #[test]
    fn fission_relations_per_vertex() {
        let t = triangle();
        let f = fission_relations(&t, &unit_parameters(&t), None).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(
            f[1].difference(),
            &AlgElem::sym(Sym::gamma(0, 2)) - &AlgElem::idempotent(2)
        );
        assert!(matches!(
            fission_relations(&t, &[rat(1, 1), rat(0, 1), rat(1, 1)], None),
            Err(QuiverError::ZeroParameter(2))
        ));
    }

    #[test]
    fn two_colors_multiply_in_the_chosen_order() {
        use crate::quiver::ColorClass;
        let q = ColoredQuiver {
            n: 2,
            colors: vec![
                ColorClass::new("a", vec![vec![1], vec![2]]),
                ColorClass::new("b", vec![vec![1], vec![2]]),
            ],
            edges: None,
        };
        let mut orders = BTreeMap::new();
        orders.insert(1, vec![1, 0]);
        let f = fission_relations(&q, &[rat(2, 1), rat(3, 1)], Some(&orders)).unwrap();
        let g = |c| AlgElem::sym(Sym::gamma(c, 1));
        assert_eq!(f[0].lhs, g(1).mul(&g(0)));
        assert_eq!(f[0].rhs, AlgElem::idempotent(1).scale(&rat(2, 1)));
        assert_eq!(
            f[1].lhs,
            AlgElem::sym(Sym::gamma(0, 2)).mul(&AlgElem::sym(Sym::gamma(1, 2)))
        );
    }
}
