//! The interval and triangle fixtures recomputed from their arrow tables.

use families::{default_chain, interval_fixture, triangle_fixture, verify_fixture, Group};
use ncalg::{parse_t2, AlgElem, Strategy, Sym, Verdict};
use quiver_core::Presentation;
use repscheme::RepOracle;

#[test]
fn interval_fixture_verifies_completely() {
    let f = interval_fixture().unwrap();
    let oracle = RepOracle::default_suite(&f.quiver).unwrap();
    let r = verify_fixture(&f, Some(&oracle), default_chain()).unwrap();
    assert_eq!(r.verdict(), Verdict::Equal, "{}", r.to_text());
    assert_eq!(r.brackets.count(Verdict::Equal), 14);
    assert_eq!(r.identities.count(Verdict::Equal), 4);
    assert_eq!(r.quasi_poisson.count(Verdict::Equal), 8);
    assert_eq!(r.literals.count(Verdict::Equal), 1);
    // Everything is decided symbolically.
    for (_, rep) in r.sections() {
        assert!(rep.entries.iter().all(|e| !e.evidence_only));
    }
}

#[test]
fn triangle_fixture_verifies_completely() {
    let f = triangle_fixture().unwrap();
    let r = verify_fixture(&f, None, vec![Strategy::Structural, Strategy::Expanded]).unwrap();
    assert_eq!(r.verdict(), Verdict::Equal, "{}", r.to_text());
    assert_eq!(r.brackets.count(Verdict::Equal), 36 + 36 + 21 + 15);
    assert_eq!(r.identities.count(Verdict::Equal), 9);
    assert_eq!(r.moment.count(Verdict::Equal), r.moment.len());
    assert_eq!(r.quasi_poisson.count(Verdict::Equal), 216);
    assert_eq!(r.literals.count(Verdict::Equal), 2);
}

#[test]
fn one_flipped_sign_gives_exactly_one_mismatch() {
    let mut f = triangle_fixture().unwrap();
    let k = f
        .expected
        .iter()
        .position(|e| e.group == Group::WV && !e.value.is_zero())
        .unwrap();
    f.expected[k].value = -f.expected[k].value.clone();
    let r = verify_fixture(&f, None, vec![Strategy::Structural, Strategy::Expanded]).unwrap();
    assert_eq!(r.brackets.count(Verdict::NotEqual), 1);
    assert_eq!(r.brackets.count(Verdict::Equal), r.brackets.len() - 1);
    let bad = r.brackets.failures().next().unwrap();
    assert!(bad.witness.is_some());
}

fn engine_value(a: Sym, b: Sym, rhs: &str) -> Verdict {
    let f = triangle_fixture().unwrap();
    let p = Presentation::new(&f.quiver).unwrap();
    let engine = dbracket::Engine::with_rules(&f.table, &p.expanded);
    let ctx = p.equality_context(None, vec![Strategy::Structural, Strategy::Expanded]);
    let lhs = engine.dbl(&AlgElem::sym(a), &AlgElem::sym(b)).unwrap();
    let rhs = parse_t2(rhs, &f.parse_ctx()).unwrap();
    ctx.equal(&lhs, &rhs).verdict
}

#[test]
fn displayed_derived_brackets_are_recomputed() {
    let (w13, v21) = (Sym::w(0, 1, 3), Sym::v(0, 2, 1));
    assert_eq!(
        engine_value(w13, v21, "1/2 v21 w13 (x) e1 - w23 (x) e1"),
        Verdict::Equal
    );
    let (w23, w32) = (Sym::w(0, 2, 3), Sym::w(0, 3, 2));
    assert_eq!(
        engine_value(
            w23,
            w32,
            "1/2 e3 (x) w23 w32 + 1/2 w32 w23 (x) e2 - g3inv (x) g2"
        ),
        Verdict::Equal
    );
    let (v31, w32) = (Sym::v(0, 3, 1), Sym::w(0, 3, 2));
    assert_eq!(engine_value(v31, w32, "-1/2 v31 (x) w32"), Verdict::Equal);
}

#[test]
fn the_printed_w12_v23_entry_is_refuted_and_its_correction_confirmed() {
    let (w12, v23) = (Sym::w(0, 1, 2), Sym::v(0, 2, 3));
    assert_eq!(
        engine_value(w12, v23, "1/2 e3 (x) w12 v23"),
        Verdict::NotEqual
    );
    assert_eq!(engine_value(w12, v23, "1/2 e2 (x) w12 v23"), Verdict::Equal);
    let f = triangle_fixture().unwrap();
    let lit = f
        .literals
        .iter()
        .find(|l| l.a == w12 && l.b == v23)
        .unwrap();
    assert_eq!(&lit.literal - &lit.corrected, lit.flagged);
}

#[test]
fn literal_entries_differ_in_exactly_the_flagged_terms() {
    for f in [interval_fixture().unwrap(), triangle_fixture().unwrap()] {
        assert!(!f.literals.is_empty());
        for l in &f.literals {
            assert_eq!(&l.literal - &l.corrected, l.flagged);
            assert_eq!(dbracket::window_for(&l.a, &l.b, &l.corrected), l.corrected);
            assert_ne!(dbracket::window_for(&l.a, &l.b, &l.literal), l.literal);
        }
    }
}
