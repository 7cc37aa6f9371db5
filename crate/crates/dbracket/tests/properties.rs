//! Randomized structural properties of the bracket extension on the
//! triangle table: both Leibniz rules, cyclic antisymmetry, idempotent
//! windows, and the cyclic symmetry and last-slot derivation property of
//! the triple bracket.

use dbracket::{BracketTable, Engine};
use ncalg::{rat, AlgElem, Sym, Tensor3, Word};
use proptest::prelude::*;

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

fn table() -> BracketTable {
    BracketTable::from_json(TABLE, &ncalg::ParseCtx::single(3)).unwrap()
}

/// A composable word of arrows starting (on the left) at `target`.
fn walk(target: u32, steps: &[bool]) -> Word {
    let mut w = Word::idempotent(target);
    let mut cur = target;
    for &b in steps {
        let others: Vec<u32> = (1..=3).filter(|&j| j != cur).collect();
        let next = others[b as usize];
        w.push(Sym::v(0, cur, next));
        cur = next;
    }
    w
}

fn arb_word() -> impl Strategy<Value = Word> {
    (1u32..=3, prop::collection::vec(any::<bool>(), 0..4)).prop_map(|(t, s)| walk(t, &s))
}

fn arb_elem() -> impl Strategy<Value = AlgElem> {
    prop::collection::vec((arb_word(), -2i64..=2), 1..3).prop_map(|ts| {
        ts.into_iter()
            .map(|(w, c)| AlgElem::term(w, rat(c, 1)))
            .fold(AlgElem::zero(), |a, b| a + b)
    })
}

/// `c (x ⊗ y ⊗ z) d = cx ⊗ y ⊗ zd`.
fn outer3(c: &AlgElem, t: &Tensor3, d: &AlgElem) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((x, y, z), k) in t.iter() {
        let l = c.mul(&AlgElem::basis(x.clone()));
        let r = AlgElem::basis(z.clone()).mul(d);
        out.add_scaled(
            &Tensor3::from_factors(&l, &AlgElem::basis(y.clone()), &r),
            k,
        );
    }
    out
}

fn unit() -> AlgElem {
    (1..=3)
        .map(AlgElem::idempotent)
        .fold(AlgElem::zero(), |a, b| a + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn outer_leibniz(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        let t = table();
        let e = Engine::new(&t);
        let lhs = e.dbl(&a, &b.mul(&c)).unwrap();
        let rhs = e.dbl(&a, &b).unwrap().outer_right(&c) + e.dbl(&a, &c).unwrap().outer_left(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inner_leibniz(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        let t = table();
        let e = Engine::new(&t);
        let lhs = e.dbl(&b.mul(&c), &a).unwrap();
        let rhs = e.dbl(&b, &a).unwrap().inner_right(&c) + e.dbl(&c, &a).unwrap().inner_left(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclic_antisymmetry(a in arb_elem(), b in arb_elem()) {
        let t = table();
        let e = Engine::new(&t);
        prop_assert_eq!(e.dbl(&b, &a).unwrap(), -e.dbl(&a, &b).unwrap().tau12());
    }

    #[test]
    fn window_membership(u in arb_word(), w in arb_word()) {
        let t = table();
        let e = Engine::new(&t);
        let r = e.dbl(&AlgElem::basis(u.clone()), &AlgElem::basis(w.clone())).unwrap();
        prop_assert_eq!(r.window(u.source(), u.target(), w.source(), w.target()), r);
    }

    #[test]
    fn triple_is_cyclic(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        let t = table();
        let e = Engine::new(&t);
        prop_assert_eq!(e.triple(&b, &c, &a).unwrap().tau123(), e.triple(&a, &b, &c).unwrap());
    }

    #[test]
    fn triple_is_a_derivation_in_the_last_slot(a in arb_elem(), b in arb_elem(), c in arb_elem(), d in arb_elem()) {
        let t = table();
        let e = Engine::new(&t);
        let lhs = e.triple(&a, &b, &c.mul(&d)).unwrap();
        let rhs = outer3(&c, &e.triple(&a, &b, &d).unwrap(), &unit()) + outer3(&unit(), &e.triple(&a, &b, &c).unwrap(), &d);
        prop_assert_eq!(lhs, rhs);
    }
}
