//! End-to-end checks on the monochromatic triangle: the generator table,
//! the quasi-Poisson sweep, brackets of derived generators and the moment
//! map.

use dbracket::{
    check_moment_map, check_quasi_poisson, fold, BracketTable, Engine, MomentComponent,
};
use ncalg::{
    parse_alg, parse_t2, render, AlgElem, EqualityContext, Kind, ParseCtx, RuleSet, Strategy, Sym,
    Verdict,
};
use quiver_core::{extended_double, triangle, Presentation};

/// The arrow table, typed in by hand; the `⟪v23, v32⟫` entry is given in
/// its window-consistent form.
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

fn ctx() -> ParseCtx {
    triangle().parse_ctx()
}

fn table() -> BracketTable {
    BracketTable::from_json(TABLE, &ctx()).unwrap()
}

fn arrows() -> Vec<Sym> {
    let mut v: Vec<Sym> = extended_double(&triangle())
        .unwrap()
        .into_iter()
        .filter(|s| s.kind == Kind::V)
        .collect();
    v.sort();
    v
}

fn a(s: &str) -> AlgElem {
    parse_alg(s, &ctx()).unwrap()
}

#[test]
fn table_is_complete_and_window_consistent() {
    let t = table();
    assert_eq!(t.len(), 36);
    assert!(t.corrections().is_empty());
    assert!(t.antisymmetry_violations().is_empty());
    assert!(t.window_violations().is_empty());
}

#[test]
fn arrow_bracket_from_the_table() {
    let t = table();
    let e = Engine::new(&t);
    assert_eq!(
        e.dbl(&a("v12"), &a("v13")).unwrap(),
        parse_t2("1/2 v12 (x) v13", &ctx()).unwrap()
    );
    assert!(e.dbl(&a("v12"), &a("e2")).unwrap().is_zero());
    assert!(e
        .associated_bracket(&a("v12"), &a("v12"))
        .unwrap()
        .is_zero());
}

#[test]
fn all_arrow_triples_are_quasi_poisson() {
    let t = table();
    let e = Engine::new(&t);
    let empty = RuleSet::new();
    let eq = EqualityContext::free(&empty);
    let r = check_quasi_poisson(&e, &eq, &arrows(), &[1, 2, 3]).unwrap();
    assert_eq!(r.len(), 216);
    assert_eq!(
        r.verdict(),
        Verdict::Equal,
        "{}",
        r.failures()
            .map(|f| f.case.clone())
            .collect::<Vec<_>>()
            .join(" ")
    );
}

#[test]
fn a_flipped_coefficient_breaks_the_identity() {
    let mut t = table();
    let (v12, v13) = (Sym::v(0, 1, 2), Sym::v(0, 1, 3));
    t.set(v12, v13, parse_t2("-1/2 v12 (x) v13", &ctx()).unwrap())
        .unwrap();
    t.set(v13, v12, parse_t2("1/2 v13 (x) v12", &ctx()).unwrap())
        .unwrap();
    assert!(t.antisymmetry_violations().is_empty());
    let e = Engine::new(&t);
    let empty = RuleSet::new();
    let eq = EqualityContext::free(&empty);
    let r = check_quasi_poisson(&e, &eq, &arrows(), &[1, 2, 3]).unwrap();
    assert_eq!(r.verdict(), Verdict::NotEqual);
    assert!(r.failures().all(|f| f.witness.is_some()));
}

#[test]
fn derived_generator_brackets() {
    let t = table();
    let p = Presentation::new(&triangle()).unwrap();
    assert!(p.expanded_complete);
    let e = Engine::with_rules(&t, &p.expanded);
    let eq = p.equality_context(None, vec![Strategy::Structural, Strategy::Expanded]);
    // γ3 commutes with v12 in the bracket sense.
    assert!(e.dbl(&a("g3"), &a("v12")).unwrap().is_zero());
    let lhs = e.dbl(&a("w13"), &a("v12")).unwrap();
    let d = eq.equal(&lhs, &parse_t2("-1/2 w13 (x) v12", &ctx()).unwrap());
    assert_eq!(d.verdict, Verdict::Equal);
    let d = eq.equal(&lhs, &parse_t2("1/2 w13 (x) v12", &ctx()).unwrap());
    assert_eq!(d.verdict, Verdict::NotEqual);
}

#[test]
fn folded_output_uses_derived_generators() {
    let t = table();
    let q = triangle();
    let p = Presentation::new(&q).unwrap();
    let e = Engine::with_rules(&t, &p.expanded);
    let r = e.dbl(&a("w13"), &a("v21")).unwrap();
    let alphabet = extended_double(&q).unwrap();
    let f = fold(&r, &alphabet, &p.expanded);
    assert_eq!(
        render::lin(&f, &q.names()),
        "1/2 v21*w13 (x) e1 - w23 (x) e1"
    );
}

#[test]
fn moment_map_on_arrows() {
    let t = table();
    let p = Presentation::new(&triangle()).unwrap();
    let e = Engine::with_rules(&t, &p.expanded);
    let eq = p.equality_context(None, vec![Strategy::Structural, Strategy::Expanded]);
    let phi: Vec<MomentComponent> = (1..=3).map(|s| MomentComponent::gamma(0, s)).collect();
    let r = check_moment_map(&e, &eq, &phi, &arrows()).unwrap();
    assert_eq!(r.len(), 36);
    assert_eq!(r.verdict(), Verdict::Equal, "{}", r.to_text());
    // Two displayed instances.
    let g2 = e.dbl(&a("g2"), &a("v12")).unwrap();
    assert_eq!(
        eq.equal(
            &g2,
            &parse_t2("1/2 v12 (x) g2 + 1/2 v12 g2 (x) e2", &ctx()).unwrap()
        )
        .verdict,
        Verdict::Equal
    );
    assert!(eq.decide_zero(&e.dbl(&a("g1"), &a("v23")).unwrap()).verdict == Verdict::Equal);
}
