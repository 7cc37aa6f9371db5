//! Evaluation of algebra and tensor elements on a representation.
//!
//! An element with `k` tensor slots evaluates to a sparse array with `2k`
//! indices in `0..N`: slot `m` contributes a row and a column index of its
//! `N × N` matrix.

use std::collections::BTreeMap;

use ncalg::{Lin, Slotted, Q};
use num::Zero;

use crate::error::RepError;
use crate::rep::MatrixRep;

/// A sparse array of evaluated tensor entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorValue {
    pub entries: BTreeMap<Vec<usize>, Q>,
}

impl TensorValue {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> Q {
        self.entries.get(idx).cloned().unwrap_or_else(Q::zero)
    }
}

/// Evaluates an element with any number of slots.
pub fn eval_slots<K: Slotted>(rep: &MatrixRep, x: &Lin<K>) -> Result<TensorValue, RepError> {
    let mut acc: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
    for (k, c) in x.iter() {
        // Sparse entries of each slot, placed at their block offsets.
        let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), c.clone())];
        for w in k.slots() {
            let b = rep.eval_word(w)?;
            let (ot, os) = (rep.offset(w.target()), rep.offset(w.source()));
            let mut next = Vec::new();
            for (idx, pc) in &partial {
                for (i, j, v) in b.nonzero() {
                    let mut idx2 = idx.clone();
                    idx2.push(ot + i);
                    idx2.push(os + j);
                    next.push((idx2, pc * v));
                }
            }
            partial = next;
        }
        for (idx, v) in partial {
            *acc.entry(idx).or_insert_with(Q::zero) += v;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(TensorValue { entries: acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::random_rep;
    use ncalg::{parse_alg, parse_t2};
    use quiver_core::triangle;

    #[test]
    fn evaluation_is_multiplicative() {
        let t = triangle();
        let ctx = t.parse_ctx();
        let r = random_rep(&t, &[2, 2, 2], 1, (-3, 3)).unwrap();
        let x = parse_alg("v12 + 2 v13 v31 - e1", &ctx).unwrap();
        let y = parse_alg("v21 - g1 + w12 v21", &ctx).unwrap();
        assert_eq!(
            r.eval(&x.mul(&y)).unwrap(),
            r.eval(&x).unwrap().mul(&r.eval(&y).unwrap())
        );
        let unit = parse_alg("e1 + e2 + e3", &ctx).unwrap();
        assert_eq!(r.eval(&unit).unwrap(), crate::matrix::RMat::identity(6));
        let gg = parse_alg("g3 g3inv", &ctx).unwrap();
        assert_eq!(
            r.eval(&gg).unwrap(),
            r.eval(&parse_alg("e3", &ctx).unwrap()).unwrap()
        );
    }

    #[test]
    fn tensor_evaluation_is_slotwise() {
        let t = triangle();
        let ctx = t.parse_ctx();
        let r = random_rep(&t, &[1, 2, 1], 3, (-3, 3)).unwrap();
        let x = parse_t2("v12 (x) v23 - 1/2 e1 (x) v21", &ctx).unwrap();
        let v = eval_slots(&r, &x).unwrap();
        let a = r.eval(&parse_alg("v12", &ctx).unwrap()).unwrap();
        let b = r.eval(&parse_alg("v23", &ctx).unwrap()).unwrap();
        let e = r.eval(&parse_alg("e1", &ctx).unwrap()).unwrap();
        let c = r.eval(&parse_alg("v21", &ctx).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let want = &a[(i, j)] * &b[(k, l)]
                            - &e[(i, j)] * &c[(k, l)] / Q::from_integer(2.into());
                        assert_eq!(v.get(&[i, j, k, l]), want);
                    }
                }
            }
        }
    }
}
