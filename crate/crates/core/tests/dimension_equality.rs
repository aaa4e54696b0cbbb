//! The production dimension search (class-representative pruning, superset
//! dropping, memoized branch-and-bound) must agree with the unpruned
//! reference search on every constructible 2-generated group of order <= 100.

use beauville_core::{
    beauville_dimension, brute_dimension, build, parse_spec, BeauvilleError, BuildOptions,
};

/// Catalog of constructible groups of order <= 100: cyclic, squares,
/// mixed abelian, dihedral, Frobenius, extraspecial, permutation and
/// presented groups.
fn catalog() -> Vec<String> {
    let mut specs: Vec<String> = Vec::new();
    for n in 2..=100u64 {
        specs.push(format!("C({n})"));
    }
    for n in 2..=10u64 {
        specs.push(format!("C({n}) x C({n})"));
    }
    for a in 2..=9u64 {
        for m in 2..=9u64 {
            if a * a * m <= 100 {
                specs.push(format!("C({a}) x C({})", a * m));
            }
        }
    }
    // Dihedral groups of order 2n.
    for n in 3..=50u64 {
        specs.push(format!("sd(C({n}), C(2), [a -> a^-1])"));
    }
    // Frobenius groups Cp : Cq for q | p - 1, via a power action.
    for (p, q, t) in [(7, 3, 2), (13, 3, 3), (31, 3, 5), (5, 4, 2), (13, 4, 5), (11, 5, 3)] {
        specs.push(format!("sd(C({p}), C({q}), [a -> a^{t}])"));
    }
    specs.extend(
        [
            "sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1])",
            "sd(C(5) x C(5), C(3), [a -> b, b -> a^-1*b^-1])",
            "sd(C(4) x C(4), C(3), [a -> b, b -> a^-1*b^-1])",
            "sd(C(2) x C(2), C(3), [a -> b, b -> a*b])",
            "sd(C(9), C(9), [a -> a^4])",
            "sd(C(9) x C(3), C(3), [a -> a*b, b -> a^6*b])",
            "perm(4; (1 2 3), (1 2)(3 4))",
            "perm(4; (1 2 3 4), (1 2))",
            "perm(4; (1 2 3 4), (1 3))",
            "perm(5; (1 2 3 4 5), (1 2 3))",
            "perm(8; (1 6 2 3)(4 7 8 5), (1 5 2 7)(3 4 6 8))",
            "perm(8; (1 4 7)(2 8 5), (3 4 5)(6 8 7))",
            "fp(x,y; x^2, y^2, (x*y)^4)",
            "fp(x,y; x^3, y^3, (x*y)^3, [x,y]^3)",
            "fp(x,y; x^4, y^4, (x*y)^2, (x*y^-1)^2)",
            "C(3) x perm(4; (1 2 3), (1 2)(3 4))",
            "C(2) x sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1])",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    specs
}

#[test]
fn pruned_search_matches_reference_up_to_order_100() {
    let opts = BuildOptions::default();
    let mut checked = 0;
    for spec in catalog() {
        let g = build(&parse_spec(&spec).unwrap(), &opts).unwrap();
        if g.order() > 100 {
            continue;
        }
        let pruned = beauville_dimension(&g);
        let brute = brute_dimension(&g);
        match (pruned, brute) {
            (Ok(p), Ok(b)) => {
                assert_eq!(p.d, b.d, "dimension disagreement for {spec}");
                assert_eq!(
                    p.blocking_element.is_some(),
                    b.blocking_element.is_some(),
                    "blocking disagreement for {spec}"
                );
                checked += 1;
            }
            (Err(BeauvilleError::NotTwoGenerated), Err(BeauvilleError::NotTwoGenerated)) => {}
            (p, b) => panic!("outcome disagreement for {spec}: {p:?} vs {b:?}"),
        }
    }
    assert!(checked >= 120, "only {checked} groups were compared");
}
