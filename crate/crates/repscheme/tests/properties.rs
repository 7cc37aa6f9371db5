//! Randomized properties of sampled representations: exact relations,
//! multiplicativity, skew-symmetry of the induced bracket, the trace
//! identity, and agreement of the oracle with symbolic decisions.

use dbracket::{BracketTable, Engine};
use ncalg::{rat, AlgElem, ElemRef, Oracle, OracleOutcome, Sym, Word};
use proptest::prelude::*;
use quiver_core::{interval, triangle, ColorClass, ColoredQuiver, Presentation};
use repscheme::{
    dimension_count, induced_bracket, random_rep, relation_residuals, trace_bracket_check,
    RepOracle,
};

/// A one- or two-color quiver on up to four vertices with a random ordered
/// partition per color.
fn arb_quiver() -> impl Strategy<Value = ColoredQuiver> {
    (
        2u32..=4,
        prop::collection::vec(0usize..4, 4),
        any::<bool>(),
        prop::collection::vec(0usize..2, 4),
    )
        .prop_map(|(n, labels, second, labels2)| {
            let part = |labels: &[usize], verts: &[u32]| -> Vec<Vec<u32>> {
                let mut parts: Vec<Vec<u32>> = Vec::new();
                let mut seen: Vec<usize> = Vec::new();
                for (k, &v) in verts.iter().enumerate() {
                    let l = labels[k];
                    match seen.iter().position(|&x| x == l) {
                        Some(p) => parts[p].push(v),
                        None => {
                            seen.push(l);
                            parts.push(vec![v]);
                        }
                    }
                }
                parts
            };
            let verts: Vec<u32> = (1..=n).collect();
            let mut colors = vec![ColorClass::new("a", part(&labels, &verts))];
            if second {
                colors.push(ColorClass::new("b", part(&labels2, &verts[..2])));
            }
            ColoredQuiver {
                n,
                colors,
                edges: None,
            }
        })
}

fn arb_dims(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=2, n).prop_filter("nonzero", |d| d.iter().any(|&x| x > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sampled_reps_satisfy_every_relation(
        (q, d) in arb_quiver().prop_flat_map(|q| { let n = q.n as usize; (Just(q), arb_dims(n)) }),
        seed in 0u64..1000,
    ) {
        let r = random_rep(&q, &d, seed, (-2, 2)).unwrap();
        for (label, m) in relation_residuals(&q, &r).unwrap() {
            prop_assert!(m.is_zero(), "{} has a nonzero residual", label);
        }
        prop_assert_eq!(r.free_parameters(), dimension_count(&q, &d).unwrap());
    }
}

/// A composable arrow word on the triangle starting (on the left) at `t`.
fn walk(t: u32, steps: &[bool]) -> Word {
    let mut w = Word::idempotent(t);
    let mut cur = t;
    for &b in steps {
        let others: Vec<u32> = (1..=3).filter(|&j| j != cur).collect();
        let next = others[b as usize];
        w.push(Sym::v(0, cur, next));
        cur = next;
    }
    w
}

fn arb_word() -> impl Strategy<Value = Word> {
    (1u32..=3, prop::collection::vec(any::<bool>(), 1..=4)).prop_map(|(t, s)| walk(t, &s))
}

const TABLE: &str = r#"{"entries":[
 {"a":"v12","b":"v12","value":"0"}, {"a":"v21","b":"v21","value":"0"},
 {"a":"v13","b":"v13","value":"0"}, {"a":"v31","b":"v31","value":"0"},
 {"a":"v23","b":"v23","value":"0"}, {"a":"v32","b":"v32","value":"0"},
 {"a":"v12","b":"v13","value":"1/2 v12 (x) v13"},
 {"a":"v12","b":"v32","value":"1/2 v32 (x) v12"},
 {"a":"v21","b":"v31","value":"-1/2 v31 (x) v21"},
 {"a":"v21","b":"v23","value":"-1/2 v21 (x) v23"},
 {"a":"v13","b":"v23","value":"1/2 v23 (x) v13"},
 {"a":"v13","b":"v32","value":"-1/2 e3 (x) v13 v32"},
 {"a":"v31","b":"v23","value":"1/2 v23 v31 (x) e3"},
 {"a":"v31","b":"v32","value":"-1/2 v31 (x) v32"},
 {"a":"v12","b":"v21","value":"-e2 (x) e1 - 1/2 e2 (x) v12 v21 - 1/2 v21 v12 (x) e1"},
 {"a":"v12","b":"v31","value":"-1/2 v31 v12 (x) e1 - v32 (x) e1"},
 {"a":"v12","b":"v23","value":"-1/2 e2 (x) v12 v23 + e2 (x) v13"},
 {"a":"v21","b":"v13","value":"1/2 e1 (x) v21 v13 + e1 (x) v23"},
 {"a":"v21","b":"v32","value":"1/2 v32 v21 (x) e2 - v31 (x) e2"},
 {"a":"v13","b":"v31","value":"-e3 (x) e1 - v32 v23 (x) e1 - 1/2 e3 (x) v13 v31 - 1/2 v31 v13 (x) e1"},
 {"a":"v23","b":"v32","value":"-e3 (x) e2 - 1/2 e3 (x) v23 v32 - 1/2 v32 v23 (x) e2"}
]}"#;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn induced_bracket_is_skew_and_traces_agree(u in arb_word(), w in arb_word(), seed in 0u64..100) {
        let q = triangle();
        let t = BracketTable::from_json(TABLE, &q.parse_ctx()).unwrap();
        let e = Engine::new(&t);
        let r = random_rep(&q, &[2, 1, 2], seed, (-3, 3)).unwrap();
        let (a, b) = (AlgElem::basis(u), AlgElem::basis(w));
        let ab = induced_bracket(&e, &r, &a, &b).unwrap();
        let ba = induced_bracket(&e, &r, &b, &a).unwrap();
        prop_assert!(ab.is_skew_to(&ba));
        let tc = trace_bracket_check(&e, &r, &a, &b).unwrap();
        prop_assert_eq!(tc.lhs, tc.rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in arb_word(), w in arb_word(), c in -3i64..=3, seed in 0u64..100) {
        let q = triangle();
        let r = random_rep(&q, &[2, 2, 1], seed, (-3, 3)).unwrap();
        let x = AlgElem::basis(u).scale(&rat(c, 1)) + AlgElem::sym(Sym::gamma(0, 2));
        let y = AlgElem::basis(w) + AlgElem::sym(Sym::gamma_inv(0, 1));
        prop_assert_eq!(r.eval(&x.mul(&y)).unwrap(), r.eval(&x).unwrap().mul(&r.eval(&y).unwrap()));
    }
}

#[test]
fn oracle_agrees_with_expanded_decisions() {
    // Pairs of elements decided symbolically by normal forms; the oracle
    // must return the same verdict.
    for q in [interval(), triangle()] {
        let p = Presentation::new(&q).unwrap();
        let o = RepOracle::default_suite(&q).unwrap();
        let ctx = q.parse_ctx();
        let exprs: Vec<&str> = if q.n == 2 {
            vec![
                "g1",
                "g2",
                "w12",
                "w21 v12",
                "g1inv",
                "g2inv v21",
                "v12 v21",
                "e1 + v12 v21",
                "g1 w12 g2",
            ]
        } else {
            vec![
                "g1",
                "g3",
                "w13",
                "w23 g3",
                "g2inv",
                "v21 v13 + v23",
                "w12 g2 w21",
                "e2 + v21 v12",
                "g1inv v12",
            ]
        };
        let elems: Vec<AlgElem> = exprs
            .iter()
            .map(|s| ncalg::parse_alg(s, &ctx).unwrap())
            .collect();
        for x in &elems {
            for y in &elems {
                let diff = x - y;
                let (n, fix) = p.normal_form(&diff);
                assert!(fix);
                let symbolic_zero = n.is_zero();
                let oracle_zero = matches!(o.test_zero(ElemRef::Alg(&diff)), OracleOutcome::Zero);
                assert_eq!(symbolic_zero, oracle_zero);
            }
        }
    }
}
