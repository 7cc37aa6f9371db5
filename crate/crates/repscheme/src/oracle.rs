//! Identity testing by exact evaluation on sampled representations.
//!
//! An element is reported zero when it evaluates to zero on every
//! representation of the suite.  This is evidence, not proof; a nonzero
//! evaluation is a definite witness.

use ncalg::{ElemRef, Oracle, OracleOutcome};
use quiver_core::ColoredQuiver;

use crate::error::RepError;
use crate::eval::eval_slots;
use crate::rep::{random_rep, MatrixRep};

/// Default entry range of sampled representations.
pub const DEFAULT_RANGE: (i64, i64) = (-3, 3);
/// Default seeds per dimension vector.
pub const DEFAULT_SEEDS: [u64; 3] = [1, 2, 3];

/// The default dimension vectors for `n` vertices: all ones, all twos, and
/// `(1, 2, 3, 1, 2, 3, ...)`.
pub fn default_dims(n: usize) -> Vec<Vec<usize>> {
    vec![vec![1; n], vec![2; n], (0..n).map(|i| 1 + i % 3).collect()]
}

/// A suite of representations used as an equality oracle.
#[derive(Clone, Debug)]
pub struct RepOracle {
    pub reps: Vec<MatrixRep>,
}

impl RepOracle {
    pub fn new(reps: Vec<MatrixRep>) -> Self {
        RepOracle { reps }
    }

    /// Every default dimension vector with every default seed.
    pub fn default_suite(q: &ColoredQuiver) -> Result<Self, RepError> {
        Self::suite(
            q,
            &default_dims(q.n as usize),
            &DEFAULT_SEEDS,
            DEFAULT_RANGE,
        )
    }

    pub fn suite(
        q: &ColoredQuiver,
        dims: &[Vec<usize>],
        seeds: &[u64],
        range: (i64, i64),
    ) -> Result<Self, RepError> {
        let mut reps = Vec::new();
        for d in dims {
            for &s in seeds {
                reps.push(random_rep(q, d, s, range)?);
            }
        }
        Ok(RepOracle { reps })
    }
}

impl Oracle for RepOracle {
    fn test_zero(&self, x: ElemRef<'_>) -> OracleOutcome {
        if self.reps.is_empty() {
            return OracleOutcome::Failed("no representations in the suite".into());
        }
        for r in &self.reps {
            let v = match x {
                ElemRef::Alg(a) => eval_slots(r, a),
                ElemRef::T2(a) => eval_slots(r, a),
                ElemRef::T3(a) => eval_slots(r, a),
            };
            match v {
                Err(e) => return OracleOutcome::Failed(e.to_string()),
                Ok(v) if !v.is_zero() => {
                    return OracleOutcome::NonZero {
                        witness: format!("nonzero on the representation {}", r.label()),
                    }
                }
                Ok(_) => {}
            }
        }
        OracleOutcome::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::{parse_alg, EqualityContext, RuleSet, Strategy, Verdict};
    use quiver_core::triangle;

    #[test]
    fn distinct_words_are_separated() {
        let t = triangle();
        let ctx = t.parse_ctx();
        let o = RepOracle::default_suite(&t).unwrap();
        assert_eq!(o.reps.len(), 9);
        let x = parse_alg("v12 v21 - v21 v12", &ctx).unwrap();
        assert!(matches!(
            o.test_zero(ElemRef::Alg(&x)),
            OracleOutcome::NonZero { .. }
        ));
        let y = parse_alg("g2 g2inv - e2", &ctx).unwrap();
        assert_eq!(o.test_zero(ElemRef::Alg(&y)), OracleOutcome::Zero);
    }

    #[test]
    fn oracle_verdicts_are_marked_as_evidence() {
        let t = triangle();
        let ctx = t.parse_ctx();
        let o = RepOracle::default_suite(&t).unwrap();
        let empty = RuleSet::new();
        let mut eq = EqualityContext::free(&empty);
        eq.chain = vec![Strategy::Oracle];
        eq.oracle = Some(&o);
        let x = parse_alg("v12", &ctx).unwrap();
        let d = eq.equal(&x, &x);
        assert_eq!(d.verdict, Verdict::Equal);
        let d = eq.equal(
            &parse_alg("g3", &ctx).unwrap(),
            &parse_alg("e3 + v31 v13 + v32 v23", &ctx).unwrap(),
        );
        assert_eq!(d.verdict, Verdict::Equal);
        assert!(d.evidence_only);
    }
}
