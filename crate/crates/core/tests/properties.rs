//! Structural properties of sigma carriers and the spec round-trip, checked
//! exhaustively on a small catalog and with randomized spec ASTs.

use beauville_core::beauville::sigma;
use beauville_core::dsl::{parse_spec, render_spec, ActionSpec, GroupSpec};
use beauville_core::verify::verify_lemma2b;
use beauville_core::{build, BuildOptions, GroupTable, Word};
use proptest::prelude::*;

fn g(spec: &str) -> GroupTable {
    build(&parse_spec(spec).unwrap(), &BuildOptions::default()).unwrap()
}

/// Small two-generated catalog used for exhaustive elementwise checks.
fn small_catalog() -> Vec<GroupTable> {
    [
        "C(6)",
        "C(3) x C(3)",
        "C(4) x C(4)",
        "perm(4; (1 2 3), (1 2)(3 4))",
        "perm(4; (1 2 3 4), (1 2))",
        "sd(C(7), C(3), [a -> a^2])",
        "sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1])",
        "fp(x,y; x^2, y^2, (x*y)^4)",
    ]
    .iter()
    .map(|s| g(s))
    .collect()
}

#[test]
fn sigma_is_symmetric() {
    for table in small_catalog() {
        let classes = table.conjugacy_classes();
        let n = table.order() as u32;
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    sigma(&table, &classes, x, y).words(),
                    sigma(&table, &classes, y, x).words(),
                    "sigma({x}, {y}) != sigma({y}, {x}) in {}",
                    table.label()
                );
            }
        }
    }
}

#[test]
fn sigma_is_conjugation_invariant() {
    for table in small_catalog() {
        let classes = table.conjugacy_classes();
        let n = table.order() as u32;
        for x in 0..n {
            for y in 0..n {
                let s = sigma(&table, &classes, x, y);
                for t in 0..n {
                    let xt = table.conjugate(x, t);
                    let yt = table.conjugate(y, t);
                    assert_eq!(
                        s.words(),
                        sigma(&table, &classes, xt, yt).words(),
                        "conjugating the pair by {t} changed sigma in {}",
                        table.label()
                    );
                }
            }
        }
    }
}

#[test]
fn carriers_are_closed_under_powers_and_conjugation() {
    for table in small_catalog() {
        let classes = table.conjugacy_classes();
        let n = table.order() as u32;
        for x in 0..n {
            for y in 0..n {
                let s = sigma(&table, &classes, x, y);
                for e in s.iter() {
                    let mut p = e;
                    loop {
                        assert!(s.contains(p), "power of {e} escapes sigma");
                        p = table.mul(p, e);
                        if p == e {
                            break;
                        }
                    }
                    for t in 0..n {
                        assert!(
                            s.contains(table.conjugate(e, t)),
                            "conjugate of {e} escapes sigma"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn trivially_intersecting_families_bound_d() {
    for spec in [
        "C(3) x C(3)",
        "C(5) x C(5)",
        "sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1])",
        "perm(5; (1 2 3 4 5), (1 2))",
    ] {
        let r = verify_lemma2b(&g(spec), 6).unwrap();
        assert!(r.pass, "bound 2 <= d <= family size violated for {spec}");
        assert!(!r.structure_sizes.is_empty(), "{spec} has no structures");
    }
}

// ------------------------------------------------ randomized round-trip --

fn word_strategy(names: &'static [&'static str]) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..names.len(), -4i64..=4), 1..5).prop_map(move |factors| {
        let mut w = Word::identity();
        for (i, e) in factors {
            w.push(names[i], e);
        }
        w
    })
}

fn nonempty_word(names: &'static [&'static str]) -> impl Strategy<Value = Word> {
    word_strategy(names).prop_filter("identity words render as `1`", |w| *w != Word::identity())
}

fn perm_gen_strategy(degree: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    // A permutation of 1..=degree as disjoint cycles, dropping fixed points.
    let points = Just((1..=degree).collect::<Vec<usize>>()).prop_shuffle();
    (points, prop::collection::vec(any::<bool>(), degree)).prop_map(|(points, cuts)| {
        let mut cycles = Vec::new();
        let mut cur = Vec::new();
        for (i, p) in points.into_iter().enumerate() {
            cur.push(p);
            if cuts[i] {
                if cur.len() > 1 {
                    cycles.push(std::mem::take(&mut cur));
                } else {
                    cur.clear();
                }
            }
        }
        if cur.len() > 1 {
            cycles.push(cur);
        }
        cycles
    })
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    let leaf = prop_oneof![
        (1u64..40).prop_map(GroupSpec::Cyclic),
        (3usize..7).prop_flat_map(|degree| {
            prop::collection::vec(perm_gen_strategy(degree), 1..3)
                .prop_map(move |gens| GroupSpec::Perm { degree, gens })
        }),
        prop::collection::vec(nonempty_word(&["x", "y"]), 1..4).prop_map(|relators| {
            GroupSpec::Fp {
                gens: vec!["x".into(), "y".into()],
                relators,
            }
        }),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| GroupSpec::Direct(Box::new(l), Box::new(r))),
            (
                inner.clone(),
                inner.clone(),
                prop_oneof![
                    (-9i64..=9)
                        .prop_filter("zero exponent is not a valid power action", |k| *k != 0)
                        .prop_map(ActionSpec::Power),
                    prop::collection::vec(
                        prop::collection::vec(
                            (prop_oneof![Just("a"), Just("b")], nonempty_word(&["a", "b"]))
                                .prop_map(|(n, w)| (n.to_string(), w)),
                            1..3
                        ),
                        1..3
                    )
                    .prop_map(ActionSpec::Words),
                ]
            )
                .prop_map(|(base, actor, action)| GroupSpec::Semidirect {
                    base: Box::new(base),
                    actor: Box::new(actor),
                    action,
                }),
            (inner, prop::collection::vec(nonempty_word(&["x", "y"]), 1..3))
                .prop_map(|(g, seeds)| GroupSpec::Quotient {
                    inner: Box::new(g),
                    seeds,
                }),
        ]
    })
}

proptest! {
    #[test]
    fn parse_render_round_trip(spec in spec_strategy()) {
        let text = render_spec(&spec);
        let parsed = parse_spec(&text)
            .unwrap_or_else(|e| panic!("rendered spec `{text}` does not parse: {e}"));
        prop_assert_eq!(parsed, spec, "round trip changed `{}`", text);
    }
}
