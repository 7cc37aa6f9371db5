//! Randomized structural properties of colored quivers and their Boalch
//! presentations.

use ncalg::{Kind, DEFAULT_STEP_CAP};
use proptest::prelude::*;
use quiver_core::{
    double_quiver, extended_double, formal_residuals, validate, ColorClass, ColoredQuiver,
    Presentation,
};

/// A random colored quiver on at most six vertices: each color picks a
/// vertex subset and splits it into parts.  `max_color` bounds the size of
/// every color class.
fn arb_quiver(max_color: usize) -> impl Strategy<Value = ColoredQuiver> {
    (1u32..=6).prop_flat_map(move |n| {
        let color = (
            proptest::sample::subsequence(
                (1..=n).collect::<Vec<_>>(),
                1..=(n as usize).min(max_color),
            ),
            proptest::collection::vec(0usize..4, 6),
        )
            .prop_map(|(vs, labels)| {
                // Assign vertices to parts by label, dropping empty parts.
                let mut parts: Vec<Vec<u32>> = vec![Vec::new(); 4];
                for (i, v) in vs.iter().enumerate() {
                    parts[labels[i]].push(*v);
                }
                parts.retain(|p| !p.is_empty());
                parts
            });
        proptest::collection::vec(color, 1..=2).prop_map(move |cs| ColoredQuiver {
            n,
            colors: cs
                .into_iter()
                .enumerate()
                .map(|(i, parts)| ColorClass::new(&format!("c{i}"), parts))
                .collect(),
            edges: None,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_quivers_are_valid(q in arb_quiver(6)) {
        prop_assert!(validate(&q).is_empty());
    }

    #[test]
    fn generator_counts_match_the_formulas(q in arb_quiver(6)) {
        let arrows = q.arrows().len();
        let double = double_quiver(&q).unwrap();
        prop_assert_eq!(double.len(), 2 * arrows);
        let ext = extended_double(&q).unwrap();
        for (ci, c) in q.colors.iter().enumerate() {
            let m = c.vertices.len();
            let ws = ext.iter().filter(|s| s.kind == Kind::W && s.color as usize == ci).count();
            let gs = ext.iter().filter(|s| s.kind == Kind::Gamma && s.color as usize == ci).count();
            prop_assert_eq!(ws, m * (m - 1));
            prop_assert_eq!(gs, m);
        }
        // Independent count of cross-part pairs.
        let mut expected = 0;
        for c in &q.colors {
            for (a, p) in c.partition.iter().enumerate() {
                for r in &c.partition[a + 1..] {
                    expected += p.len() * r.len();
                }
            }
        }
        prop_assert_eq!(arrows, expected);
    }

    #[test]
    fn validation_ignores_within_part_order(q in arb_quiver(6)) {
        let mut r = q.clone();
        for c in &mut r.colors {
            for p in &mut c.partition {
                p.reverse();
            }
        }
        prop_assert_eq!(validate(&q), validate(&r));
        prop_assert_eq!(validate(&q), validate(&q));
    }

    #[test]
    fn derived_generators_satisfy_the_relations_formally(q in arb_quiver(4)) {
        for r in formal_residuals(&q, DEFAULT_STEP_CAP).unwrap() {
            prop_assert!(r.fixpoint);
            prop_assert!(r.residual.is_zero(), "component {:?}", r.relation.component);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn small_presentations_satisfy_the_relations(q in arb_quiver(3)) {
        let p = Presentation::new(&q).unwrap();
        for r in p.expanded_residuals().unwrap() {
            prop_assert!(r.residual.is_zero(), "component {:?}", r.relation.component);
        }
    }
}

#[test]
fn singleton_part_presentations_are_confluent() {
    for n in 1..=3 {
        assert!(
            Presentation::new(&quiver_core::complete(n))
                .unwrap()
                .expanded_complete,
            "n = {n}"
        );
    }
}

#[test]
fn a_two_vertex_part_can_break_confluence() {
    // The localization rules are not a complete system for every partition;
    // the presentation must then say so instead of claiming completeness.
    let q = ColoredQuiver {
        n: 3,
        colors: vec![ColorClass::new("c", vec![vec![2, 3], vec![1]])],
        edges: None,
    };
    let p = Presentation::new(&q).unwrap();
    assert!(!p.expanded_complete);
    assert!(p
        .expanded_residuals()
        .unwrap()
        .iter()
        .all(|r| r.residual.is_zero()));
}

#[test]
fn json_round_trip() {
    let q = ColoredQuiver {
        n: 3,
        colors: vec![ColorClass {
            id: "c".into(),
            vertices: vec![1, 2, 3],
            partition: vec![vec![2, 3], vec![1]],
            part_order: vec![1, 0],
        }],
        edges: None,
    };
    let back = ColoredQuiver::from_json(&q.to_json()).unwrap();
    assert_eq!(back, q);
}

#[test]
fn malformed_json_is_rejected() {
    assert!(ColoredQuiver::from_json("{\"n\": 2}").is_err());
    let bad = r#"{"n":2,"colors":[{"id":"c","vertices":[1,3],"partition":[[1],[3]],"part_order":[0,1]}]}"#;
    assert!(ColoredQuiver::from_json(bad).is_err());
}
