//! Brackets induced on matrix entries.
//!
//! A double bracket induces on the coordinate functions of a representation
//! the bracket `{a_ij, b_uv} = ⟪a,b⟫'_uj ⟪a,b⟫''_iv` (summed over the terms
//! of `⟪a,b⟫`), and on traces `{tr a, tr b} = tr m(⟪a,b⟫)`.

use dbracket::Engine;
use ncalg::{AlgElem, Verdict, Q};
use num::Zero;

use crate::error::RepError;
use crate::rep::MatrixRep;

/// The array `{a_ij, b_uv}` indexed by `(i, j, u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBracket {
    pub n: usize,
    data: Vec<Q>,
}

impl InducedBracket {
    fn zeros(n: usize) -> Self {
        InducedBracket {
            n,
            data: vec![Q::zero(); n.pow(4)],
        }
    }

    fn at(&self, i: usize, j: usize, u: usize, v: usize) -> usize {
        ((i * self.n + j) * self.n + u) * self.n + v
    }

    pub fn get(&self, i: usize, j: usize, u: usize, v: usize) -> &Q {
        &self.data[self.at(i, j, u, v)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// True if `self(i,j,u,v) = −other(u,v,i,j)` everywhere.
    pub fn is_skew_to(&self, other: &InducedBracket) -> bool {
        let n = self.n;
        other.n == n
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    (0..n).all(|u| (0..n).all(|v| *self.get(i, j, u, v) == -other.get(u, v, i, j)))
                })
            })
    }

    /// `Σ_{i,v} {a_ii, b_vv}`.
    pub fn trace_pairing(&self) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.n {
            for v in 0..self.n {
                acc += self.get(i, i, v, v);
            }
        }
        acc
    }
}

/// `{a_ij, b_uv}` on the representation.
pub fn induced_bracket(
    engine: &Engine<'_>,
    rep: &MatrixRep,
    a: &AlgElem,
    b: &AlgElem,
) -> Result<InducedBracket, RepError> {
    let t = engine.dbl(a, b)?;
    let mut out = InducedBracket::zeros(rep.total_dim());
    for ((x, y), c) in t.iter() {
        let bx = rep.eval_word(x)?;
        let by = rep.eval_word(y)?;
        let (xt, xs) = (rep.offset(x.target()), rep.offset(x.source()));
        let (yt, ys) = (rep.offset(y.target()), rep.offset(y.source()));
        for (p, q, xv) in bx.nonzero() {
            let (u, j) = (xt + p, xs + q);
            let cx = c * xv;
            for (r, s, yv) in by.nonzero() {
                let (i, v) = (yt + r, ys + s);
                let k = out.at(i, j, u, v);
                out.data[k] += &cx * yv;
            }
        }
    }
    Ok(out)
}

/// Both sides of the trace identity and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub lhs: Q,
    pub rhs: Q,
    pub verdict: Verdict,
}

/// Compares `Σ_{i,v} {a_ii, b_vv}` with `tr(m⟪a,b⟫)` on the representation.
pub fn trace_bracket_check(
    engine: &Engine<'_>,
    rep: &MatrixRep,
    a: &AlgElem,
    b: &AlgElem,
) -> Result<TraceCheck, RepError> {
    let lhs = induced_bracket(engine, rep, a, b)?.trace_pairing();
    let rhs = rep.eval(&engine.associated_bracket(a, b)?)?.trace();
    let verdict = if lhs == rhs {
        Verdict::Equal
    } else {
        Verdict::NotEqual
    };
    Ok(TraceCheck { lhs, rhs, verdict })
}
