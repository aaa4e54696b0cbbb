//! End-to-end acceptance checks. Each test prints a single PASS line for its
//! criterion; a failed assertion marks the criterion failed.

use beauville_core::verify::{predict_abelian_d, verify_abelian_classification, verify_thm8};
use beauville_core::word::evaluate_word;
use beauville_core::{
    beauville_dimension, brute_dimension, build, build_quotient_map, check_structure,
    enumerate_sigma_records, is_faithfully_represented, lift_structure, parse_spec,
    BeauvilleError, BuildOptions, Classification, GeneratingPair, GroupSpec, GroupTable,
};
use std::collections::HashMap;
use std::process::Command;
use std::time::Instant;

fn opts() -> BuildOptions {
    BuildOptions::default()
}

fn make(spec: &str) -> GroupTable {
    build(&parse_spec(spec).unwrap(), &opts()).unwrap()
}

/// Evaluate a word written in spec syntax against the designated generators.
fn eval(g: &GroupTable, text: &str) -> u32 {
    let assign: HashMap<String, u32> = g
        .gen_names()
        .iter()
        .cloned()
        .zip(g.generators().iter().copied())
        .collect();
    let names = g.gen_names().join(",");
    let GroupSpec::Fp { relators, .. } =
        parse_spec(&format!("fp({names}; {text})")).unwrap()
    else {
        unreachable!()
    };
    evaluate_word(g, &assign, &relators[0]).unwrap()
}

const EX3_SPEC: &str =
    "fp(x,y; x^9, y^9, [x,y]^3, [x^3,y], [x,y^3], (x*y^2)^3, (x^2*y)^3, (y*x)^3*x^3*y^3)";

const EX5_SPEC: &str = "quot(fp(x,y; x^3, y^3, (y^2*x*y^2*x^2)^3, (y^2*x^2*y*x^2)^3, \
     (y^2*x^2*y*x)^3, (y^2*x)^2*y*x*(y*x^2)^2*(y*x)^2); \
     (y*x)^3, y*x*y^2*x*(y*x^2)^3*y^2*x*y)";

#[test]
fn criterion_1_c3xc3_carriers() {
    let start = Instant::now();
    let g = make("C(3) x C(3)");
    let classes = g.conjugacy_classes();
    let records = enumerate_sigma_records(&g, &classes).unwrap();
    assert_eq!(records.len(), 4, "expected 4 distinct carriers");
    for r in &records {
        assert_eq!(r.carrier.count(), 7, "each carrier has size 7");
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let mut s = records[i].carrier.clone();
            s.intersect_with(&records[j].carrier);
            assert!(!s.is_trivial(), "pairwise intersection ({i}, {j}) is trivial");
            for k in j + 1..4 {
                let mut t = s.clone();
                t.intersect_with(&records[k].carrier);
                assert!(!t.is_trivial(), "triple intersection ({i}, {j}, {k}) is trivial");
            }
        }
    }
    let dim = beauville_dimension(&g).unwrap();
    assert_eq!(dim.d, 4);
    assert!(start.elapsed().as_secs() < 1, "budget: < 1 s");
    println!("PASS criterion 1: C(3) x C(3) has 4 size-7 carriers, non-trivial pair/triple intersections, d = 4");
}

#[test]
fn criterion_2_presented_group_of_order_243() {
    let start = Instant::now();
    let g = make(EX3_SPEC);
    assert_eq!(g.order(), 243);
    let dim = beauville_dimension(&g).unwrap();
    assert_eq!(dim.d, 3);

    // The published 3-pair family A, B, C.
    let pairs = [
        ("x^-1*y^3", "x^2*y"),
        ("x^3*y^-1", "x*y^-3"),
        ("x^-1*y", "x*y"),
    ]
    .map(|(a, b)| GeneratingPair::new(&g, eval(&g, a), eval(&g, b)));
    let fam = check_structure(&g, &pairs).unwrap();
    assert_ne!(fam.classification, Classification::NotAStructure);
    for i in 0..3 {
        for j in i + 1..3 {
            let mut s = fam.carriers[i].clone();
            s.intersect_with(&fam.carriers[j]);
            assert!(!s.is_trivial(), "the group would be Beauville");
        }
    }

    // The search's own witness family has the same shape.
    let w = dim.witness.unwrap();
    assert_eq!(w.pairs.len(), 3);
    for i in 0..3 {
        for j in i + 1..3 {
            let mut s = w.carriers[i].clone();
            s.intersect_with(&w.carriers[j]);
            assert!(!s.is_trivial());
        }
    }
    assert!(start.elapsed().as_secs() < 60, "budget: < 60 s");
    println!("PASS criterion 2: the order-243 presentation has d = 3 with a pairwise non-trivial 3-pair witness");
}

#[test]
fn criterion_3_order_729_quotient_lift() {
    let start = Instant::now();
    let q = build_quotient_map(&parse_spec(EX5_SPEC).unwrap(), &opts()).unwrap();
    let g = q.source().clone();
    assert_eq!(g.order(), 729);
    assert_eq!(q.target().order(), 81);

    let x = eval(&g, "x");
    let y = eval(&g, "y");
    let x2y = eval(&g, "x^2*y");
    let y2 = eval(&g, "y^2");
    for (e, ord) in [(x, 3), (x2y, 9), (y2, 3)] {
        assert_eq!(g.element_order(e), ord);
        assert!(is_faithfully_represented(&q, e));
    }

    let pairs = vec![
        GeneratingPair::new(&g, x, y),
        GeneratingPair::new(&g, x, eval(&g, "x*y")),
        GeneratingPair::new(&g, y, x2y),
        GeneratingPair::new(&g, x, x2y),
    ];
    let lifted = lift_structure(&q, &pairs).unwrap();
    assert_eq!(lifted.classification, Classification::NonDerived);

    assert_eq!(beauville_dimension(q.target()).unwrap().d, 4);
    assert_eq!(beauville_dimension(&g).unwrap().d, 2);
    assert!(start.elapsed().as_secs() < 600, "budget: < 10 min");
    println!("PASS criterion 3: order-729 source, order-81 quotient, faithful {{3, 9, 3}} triple, lifted family non-derived, d = 4 vs d = 2");
}

#[test]
fn criterion_4_abelian_classification_to_400() {
    let start = Instant::now();
    let r = verify_abelian_classification(400, &opts()).unwrap();
    assert_eq!(r.mismatches, 0, "predictor mismatches: {:?}",
        r.rows.iter().filter(|(_, p, c)| p != c).collect::<Vec<_>>());
    for (sig, predicted, computed) in &r.rows {
        assert!(matches!(computed, 1 | 2 | 4), "{sig:?} has d = {computed}");
        assert_eq!(predict_abelian_d(sig), *predicted);
    }
    assert!(start.elapsed().as_secs() < 300, "budget: < 5 min");
    println!(
        "PASS criterion 4: all {} abelian groups of order <= 400 match the closed form (d in {{1, 2, 4}})",
        r.rows.len()
    );
}

#[test]
fn criterion_5_frobenius_census() {
    let start = Instant::now();
    for p in [7u64, 13, 19] {
        let r = verify_thm8(p, &opts()).unwrap();
        assert!(r.pass, "census failed for p = {p}: {r:?}");
        let p_ = p as usize;
        assert_eq!(r.class_count, p_ + 8);
        assert_eq!(r.count_order_p, p_ - 1);
        assert_eq!(r.count_order_3p, 2 * (p_ - 1));
        assert_eq!(r.count_order_3, 2 * (3 * p_ + 1));
        assert_eq!(r.sigma_profile.len(), 4);
        assert_eq!(r.d, 4);
    }
    assert!(start.elapsed().as_secs() < 120, "budget: < 2 min total");
    println!("PASS criterion 5: C3 x (Cp : C3) census exact for p = 7, 13, 19 with d = 4");
}

#[test]
fn criterion_6_coprime_products() {
    let start = Instant::now();
    let d225 = beauville_dimension(&make("C(3) x C(3) x C(5) x C(5)")).unwrap();
    assert_eq!(d225.d, 4);
    let d675 = beauville_dimension(&make(
        "sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1]) x C(5) x C(5)",
    ))
    .unwrap();
    assert_eq!(d675.d, 4);
    assert!(start.elapsed().as_secs() < 300, "budget: < 5 min");
    println!("PASS criterion 6: orders 225 and 675 coprime products both have d = 4");
}

#[test]
fn criterion_7_fixture_suite() {
    let start = Instant::now();
    let report = bv::run_fixtures("paper-tables", &opts()).unwrap();
    assert!(report.rows.len() >= 40);
    for r in &report.rows {
        assert!(
            r.pass,
            "fixture failed: {} -> d = {:?} order = {:?} ({})",
            r.spec, r.d, r.order, r.provenance
        );
    }
    for (order, id, d) in [
        (25, 2, 2),
        (27, 3, 4),
        (36, 11, 4),
        (63, 3, 4),
        (81, 2, 4),
        (120, 34, 2),
        (125, 3, 2),
        (168, 42, 2),
        (225, 6, 4),
        (243, 4, 3),
    ] {
        let row = report
            .rows
            .iter()
            .find(|r| r.provenance.contains(&format!("SmallGroup({order}, {id})")))
            .unwrap_or_else(|| panic!("required row ({order}, {id}) missing"));
        assert_eq!(row.d, Some(d));
        assert_eq!(row.order, Some(order));
    }
    assert!(start.elapsed().as_secs() < 1800, "budget: < 30 min");
    println!(
        "PASS criterion 7: all {} fixture rows match their catalog order and d",
        report.rows.len()
    );
}

#[test]
fn criterion_8_property_suite() {
    use beauville_core::beauville::sigma;
    use beauville_core::verify::verify_lemma2b;
    let start = Instant::now();

    // Sigma symmetry and conjugation invariance, exhaustive on small groups.
    for spec in ["C(3) x C(3)", "perm(4; (1 2 3 4), (1 2))", "sd(C(7), C(3), [a -> a^2])"] {
        let g = make(spec);
        let classes = g.conjugacy_classes();
        let n = g.order() as u32;
        for x in 0..n {
            for y in 0..n {
                let s = sigma(&g, &classes, x, y);
                assert_eq!(s.words(), sigma(&g, &classes, y, x).words());
                for t in 0..n {
                    assert_eq!(
                        s.words(),
                        sigma(&g, &classes, g.conjugate(x, t), g.conjugate(y, t)).words()
                    );
                    for e in s.iter() {
                        assert!(s.contains(g.conjugate(e, t)));
                    }
                }
                for e in s.iter() {
                    let mut p = e;
                    loop {
                        assert!(s.contains(p));
                        p = g.mul(p, e);
                        if p == e {
                            break;
                        }
                    }
                }
            }
        }
    }

    // Every found structure bounds d: 2 <= d <= family size. The order-243
    // group has no structure among its smallest carriers (the ones the
    // checker inspects), so the non-emptiness claim applies to the squares.
    for spec in ["C(3) x C(3)", "C(5) x C(5)", EX3_SPEC] {
        let r = verify_lemma2b(&make(spec), 6).unwrap();
        assert!(r.pass, "bound violated for {spec}");
        if spec != EX3_SPEC {
            assert!(!r.structure_sizes.is_empty());
        }
    }

    // Pruned vs unpruned dimension on 2-generated groups of order <= 100.
    let mut compared = 0;
    let mut specs: Vec<String> = (2..=100).map(|n| format!("C({n})")).collect();
    specs.extend((2..=10).map(|n| format!("C({n}) x C({n})")));
    specs.extend((3..=50).map(|n| format!("sd(C({n}), C(2), [a -> a^-1])")));
    specs.extend(
        [
            "sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1])",
            "sd(C(5) x C(5), C(3), [a -> b, b -> a^-1*b^-1])",
            "sd(C(9), C(9), [a -> a^4])",
            "sd(C(7), C(3), [a -> a^2])",
            "perm(4; (1 2 3), (1 2)(3 4))",
            "perm(4; (1 2 3 4), (1 2))",
            "perm(5; (1 2 3 4 5), (1 2 3))",
            "perm(8; (1 6 2 3)(4 7 8 5), (1 5 2 7)(3 4 6 8))",
            "fp(x,y; x^2, y^2, (x*y)^4)",
            "fp(x,y; x^3, y^3, (x*y)^3, [x,y]^3)",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    for spec in specs {
        let g = make(&spec);
        assert!(g.order() <= 100, "{spec} exceeds the catalog bound");
        match (beauville_dimension(&g), brute_dimension(&g)) {
            (Ok(p), Ok(b)) => {
                assert_eq!(p.d, b.d, "disagreement for {spec}");
                compared += 1;
            }
            (Err(BeauvilleError::NotTwoGenerated), Err(BeauvilleError::NotTwoGenerated)) => {}
            (p, b) => panic!("outcome disagreement for {spec}: {p:?} vs {b:?}"),
        }
    }
    assert!(compared >= 100, "only {compared} groups compared");
    assert!(start.elapsed().as_secs() < 300);
    println!("PASS criterion 8: sigma symmetry/invariance/closure, structure bounds, and pruned-vs-reference agreement on {compared} groups");
}

#[test]
fn criterion_9_deterministic_fixture_json() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_bv"))
            .args(["fixtures", "--suite", "paper-tables", "--format", "json", "--threads", threads])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "fixtures exited non-zero");
        out.stdout
    };
    let one = run("1");
    let eight = run("8");
    assert_eq!(one, eight, "fixture JSON differs between 1 and 8 threads");
    assert!(!one.is_empty());
    println!("PASS criterion 9: fixture JSON is byte-identical with 1 and 8 threads");
}
