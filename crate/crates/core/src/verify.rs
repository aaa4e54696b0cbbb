//! Executable checks of the classification results: closed-form predictors
//! cross-validated against the exhaustive dimension engine.

use crate::beauville::{beauville_dimension, enumerate_sigma_records, sigma};
use crate::dsl::{build, parse_spec, BuildOptions, GroupSpec};
use crate::error::BeauvilleError;
use crate::group::{gcd, GroupTable};
use crate::set::ElementSet;
use rayon::prelude::*;

/// Invariant factors (n1 | n2 | ...) of a finite abelian group, each >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSignature(pub Vec<u64>);

impl AbelianSignature {
    pub fn new(factors: Vec<u64>) -> Option<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f < 2) {
            return None;
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return None;
            }
        }
        Some(AbelianSignature(factors))
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn spec_text(&self) -> String {
        self.0
            .iter()
            .map(|f| format!("C({f})"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// The dimension of a 2-generated abelian group: 2 for Cn x Cn with n > 1
/// coprime to 6, 4 for Cn x Cn with n = 3^k r, k >= 1, r coprime to 6,
/// otherwise 1.
pub fn predict_abelian_d(sig: &AbelianSignature) -> usize {
    let f = &sig.0;
    if f.len() != 2 || f[0] != f[1] {
        return 1;
    }
    let mut n = f[0];
    if n % 2 == 0 {
        return 1;
    }
    let mut k = 0;
    while n % 3 == 0 {
        n /= 3;
        k += 1;
    }
    if gcd(n as usize, 6) != 1 {
        return 1;
    }
    if k >= 1 {
        4
    } else {
        2
    }
}

#[derive(Clone, Debug)]
pub struct AbelianReport {
    /// (signature, predicted d, computed d) for every checked group.
    pub rows: Vec<(AbelianSignature, usize, usize)>,
    pub mismatches: usize,
}

/// Compare the predictor against the dimension engine on every abelian group
/// with at most two invariant factors and order <= max_order.
pub fn verify_abelian_classification(
    max_order: u64,
    opts: &BuildOptions,
) -> Result<AbelianReport, BeauvilleError> {
    let mut sigs = Vec::new();
    for n in 2..=max_order {
        sigs.push(AbelianSignature(vec![n]));
    }
    for a in 2..=max_order {
        for m in 1..=max_order {
            let b = a * m;
            if a * b > max_order {
                break;
            }
            sigs.push(AbelianSignature(vec![a, b]));
        }
    }
    sigs.sort_by_key(|s| (s.order(), s.0.clone()));

    let rows: Vec<(AbelianSignature, usize, usize)> = sigs
        .par_iter()
        .map(|sig| {
            let g = build(&parse_spec(&sig.spec_text()).unwrap(), opts)
                .expect("abelian spec within cap");
            let computed = beauville_dimension(&g).expect("abelian groups here are 2-generated");
            (sig.clone(), predict_abelian_d(sig), computed.d)
        })
        .collect();
    let mismatches = rows.iter().filter(|(_, p, c)| p != c).count();
    Ok(AbelianReport { rows, mismatches })
}

#[derive(Clone, Debug)]
pub struct Order3CensusReport {
    pub k: u32,
    pub order: usize,
    pub order3_elements: usize,
    pub carrier_sizes: Vec<usize>,
    pub order3_per_carrier: Vec<usize>,
    pub pass: bool,
}

/// For C_{3^k} x C_{3^k}: exactly 8 elements of order 3, and every distinct
/// sigma carrier contains exactly 6 of them.
pub fn verify_order3_census(
    k: u32,
    opts: &BuildOptions,
) -> Result<Order3CensusReport, BeauvilleError> {
    let n = 3u64.pow(k);
    let g = build(
        &parse_spec(&format!("C({n}) x C({n})")).unwrap(),
        opts,
    )
    .expect("within cap");
    let classes = g.conjugacy_classes();
    let records = enumerate_sigma_records(&g, &classes)?;
    let order3: Vec<u32> = (0..g.order() as u32)
        .filter(|&e| g.element_order(e) == 3)
        .collect();
    let carrier_sizes: Vec<usize> = records.iter().map(|r| r.carrier.count()).collect();
    let per_carrier: Vec<usize> = records
        .iter()
        .map(|r| order3.iter().filter(|&&e| r.carrier.contains(e)).count())
        .collect();
    let pass = order3.len() == 8 && per_carrier.iter().all(|&c| c == 6);
    Ok(Order3CensusReport {
        k,
        order: g.order(),
        order3_elements: order3.len(),
        carrier_sizes,
        order3_per_carrier: per_carrier,
        pass,
    })
}

#[derive(Clone, Debug)]
pub struct DirectProductReport {
    pub g_order: usize,
    pub h_order: usize,
    pub d_g: usize,
    pub d_h: usize,
    pub d_product: usize,
    /// Whether the intersection of the two constructed product carriers has
    /// a trivial second-factor component elementwise.
    pub mechanism_trivial_h_component: bool,
    pub pass: bool,
}

/// For coprime orders with d(G) = n > 2 and d(H) = 2, the product satisfies
/// d(G x H) = n. Also checks the underlying mechanism: intersecting two
/// product carriers built from paired witnesses leaves only elements whose
/// second-factor component is trivial.
pub fn verify_direct_product(
    gspec: &GroupSpec,
    hspec: &GroupSpec,
    opts: &BuildOptions,
) -> Result<DirectProductReport, BeauvilleError> {
    let g = build(gspec, opts)
        .map_err(|e| BeauvilleError::PremiseFailed(format!("building first factor: {e}")))?;
    let h = build(hspec, opts)
        .map_err(|e| BeauvilleError::PremiseFailed(format!("building second factor: {e}")))?;
    if gcd(g.order(), h.order()) != 1 {
        return Err(BeauvilleError::PremiseFailed(format!(
            "orders {} and {} are not coprime",
            g.order(),
            h.order()
        )));
    }
    let dg = beauville_dimension(&g)?;
    let dh = beauville_dimension(&h)?;
    if dg.d <= 2 {
        return Err(BeauvilleError::PremiseFailed(format!(
            "first factor needs d > 2, got {}",
            dg.d
        )));
    }
    if dh.d != 2 {
        return Err(BeauvilleError::PremiseFailed(format!(
            "second factor needs d = 2, got {}",
            dh.d
        )));
    }
    let (p, emb_g, emb_h) =
        GroupTable::direct_product_with_embeddings(&g, &h, opts.max_order)
            .map_err(|e| BeauvilleError::PremiseFailed(format!("building product: {e}")))?;
    let dp = beauville_dimension(&p)?;

    // Mechanism: product pairs (x_i u_i, y_i v_i) from the factor witnesses.
    let gw = dg.witness.as_ref().expect("d > 2 has a witness").pairs.clone();
    let hw = dh.witness.as_ref().expect("d = 2 has a witness").pairs.clone();
    let pair = |gi: usize, hi: usize| {
        (
            p.mul(emb_g[gw[gi].x as usize], emb_h[hw[hi].x as usize]),
            p.mul(emb_g[gw[gi].y as usize], emb_h[hw[hi].y as usize]),
        )
    };
    let (x1, y1) = pair(0, 0);
    let (x2, y2) = pair(1, 1);
    let classes = p.conjugacy_classes();
    let mut inter = sigma(&p, &classes, x1, y1);
    inter.intersect_with(&sigma(&p, &classes, x2, y2));
    let mut g_image = ElementSet::empty(p.order());
    for &e in &emb_g {
        g_image.insert(e);
    }
    let mechanism = inter.iter().all(|e| g_image.contains(e));

    let pass = dp.d == dg.d && mechanism;
    Ok(DirectProductReport {
        g_order: g.order(),
        h_order: h.order(),
        d_g: dg.d,
        d_h: dh.d,
        d_product: dp.d,
        mechanism_trivial_h_component: mechanism,
        pass,
    })
}

#[derive(Clone, Debug)]
pub struct Thm8Census {
    pub p: u64,
    pub order: usize,
    pub class_count: usize,
    pub count_order_p: usize,
    pub count_order_3p: usize,
    pub count_order_3: usize,
    pub sigma_profile: Vec<usize>,
    pub center_in_large_carriers: bool,
    pub d: usize,
    pub pass: bool,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// The smallest t > 1 with t^3 = 1 (mod p); exists iff p = 1 (mod 3).
pub fn cube_root_action(p: u64) -> Option<u64> {
    (2..p).find(|&t| (t * t % p) * t % p == 1)
}

/// Build C3 x (Cp : C3) and check the full census of the order-3p case:
/// p + 8 classes, the element-order counts, four carriers with profile
/// three of size 7p and one of size 6p + 1, the centre inside the three
/// large carriers, and d = 4.
pub fn verify_thm8(p: u64, opts: &BuildOptions) -> Result<Thm8Census, BeauvilleError> {
    if !is_prime(p) || p % 3 != 1 {
        return Err(BeauvilleError::PremiseFailed(format!(
            "p = {p} must be a prime congruent to 1 mod 3"
        )));
    }
    let t = cube_root_action(p).expect("p = 1 mod 3 has a non-trivial cube root of unity");
    let spec = parse_spec(&format!("sd(C({p}), C(3), [a -> a^{t}]) x C(3)")).unwrap();
    let g = build(&spec, opts)
        .map_err(|e| BeauvilleError::PremiseFailed(format!("construction: {e}")))?;
    let classes = g.conjugacy_classes();
    let count_of = |ord: usize| {
        (0..g.order() as u32)
            .filter(|&e| g.element_order(e) == ord)
            .count()
    };
    let count_order_p = count_of(p as usize);
    let count_order_3p = count_of(3 * p as usize);
    let count_order_3 = count_of(3);
    let records = enumerate_sigma_records(&g, &classes)?;
    let sigma_profile: Vec<usize> = records.iter().map(|r| r.carrier.count()).collect();
    let p_ = p as usize;
    let mut expected_profile = vec![6 * p_ + 1, 7 * p_, 7 * p_, 7 * p_];
    expected_profile.sort_unstable();
    let mut got_profile = sigma_profile.clone();
    got_profile.sort_unstable();

    let center = g.center();
    let center_in_large = records
        .iter()
        .filter(|r| r.carrier.count() == 7 * p_)
        .all(|r| center.is_subset_of(&r.carrier));

    let dim = beauville_dimension(&g)?;
    let pass = classes.count() == p_ + 8
        && count_order_p == p_ - 1
        && count_order_3p == 2 * (p_ - 1)
        && count_order_3 == 2 * (3 * p_ + 1)
        && records.len() == 4
        && got_profile == expected_profile
        && center_in_large
        && dim.d == 4;
    Ok(Thm8Census {
        p,
        order: g.order(),
        class_count: classes.count(),
        count_order_p,
        count_order_3p,
        count_order_3,
        sigma_profile,
        center_in_large_carriers: center_in_large,
        d: dim.d,
        pass,
    })
}

/// Families asserted to have d = 4. The literature also mentions a family
/// written with unbalanced parentheses whose intended action is ambiguous;
/// it is excluded here.
pub const D4_FAMILIES: &[&str] = &["a4-frob", "scalar3k", "c3-scalar", "frob-frob", "c3-a4"];

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub family: String,
    pub params: Vec<u64>,
    pub spec: String,
    pub order: usize,
    pub d: usize,
    pub pass: bool,
}

/// Spec text for one member of a named d = 4 family.
pub fn family_spec(family: &str, params: &[u64]) -> Result<String, BeauvilleError> {
    let a4 = "perm(4; (1 2 3), (1 2)(3 4))";
    let frob = |p: u64| -> Result<String, BeauvilleError> {
        if !is_prime(p) || p % 3 != 1 {
            return Err(BeauvilleError::PremiseFailed(format!(
                "p = {p} must be a prime congruent to 1 mod 3"
            )));
        }
        let t = cube_root_action(p).unwrap();
        Ok(format!("sd(C({p}), C(3), [a -> a^{t}])"))
    };
    let scalar = |n: u64| format!("sd(C({n}) x C({n}), C(3), [a -> b, b -> a^-1*b^-1])");
    match (family, params) {
        ("a4-frob", [p]) => Ok(format!("{a4} x {}", frob(*p)?)),
        ("scalar3k", [k]) => {
            if *k % 3 != 0 {
                return Err(BeauvilleError::PremiseFailed(format!(
                    "parameter {k} must be divisible by 3"
                )));
            }
            Ok(scalar(*k))
        }
        ("c3-scalar", [n]) => Ok(format!("C(3) x {}", scalar(*n))),
        ("frob-frob", [p1, p2]) => {
            if p1 == p2 {
                return Err(BeauvilleError::PremiseFailed(
                    "the two primes must differ".into(),
                ));
            }
            Ok(format!("{} x {}", frob(*p1)?, frob(*p2)?))
        }
        ("c3-a4", []) => Ok(format!("C(3) x {a4}")),
        _ => Err(BeauvilleError::PremiseFailed(format!(
            "unknown family `{family}` or wrong parameter count"
        ))),
    }
}

/// Build one family member and assert d = 4.
pub fn verify_family_d4(
    family: &str,
    params: &[u64],
    opts: &BuildOptions,
) -> Result<FamilyReport, BeauvilleError> {
    let spec_text = family_spec(family, params)?;
    let spec = parse_spec(&spec_text).unwrap();
    let g = build(&spec, opts)
        .map_err(|e| BeauvilleError::PremiseFailed(format!("construction: {e}")))?;
    let dim = beauville_dimension(&g)?;
    Ok(FamilyReport {
        family: family.to_string(),
        params: params.to_vec(),
        spec: spec_text,
        order: g.order(),
        d: dim.d,
        pass: dim.d == 4,
    })
}

#[derive(Clone, Debug)]
pub struct Lemma2bReport {
    pub d: usize,
    /// Sizes of the trivially-intersecting carrier families inspected.
    pub structure_sizes: Vec<usize>,
    pub pass: bool,
}

/// Every family of distinct carriers with trivial common intersection bounds
/// the dimension: 2 <= d <= family size. Inspects all families up to the
/// given size (capped for tractability).
pub fn verify_lemma2b(g: &GroupTable, max_size: usize) -> Result<Lemma2bReport, BeauvilleError> {
    let classes = g.conjugacy_classes();
    let records = enumerate_sigma_records(g, &classes)?;
    let dim = beauville_dimension(g)?;
    let m = records.len().min(12);
    let mut sizes = Vec::new();
    let mut pass = dim.d >= 1;
    for mask in 1u32..(1 << m) {
        let k = mask.count_ones() as usize;
        if k < 2 || k > max_size {
            continue;
        }
        let mut acc = ElementSet::full(g.order());
        for i in 0..m {
            if mask >> i & 1 == 1 {
                acc.intersect_with(&records[i].carrier);
            }
        }
        if acc.is_trivial() {
            sizes.push(k);
            if !(2 <= dim.d && dim.d <= k) {
                pass = false;
            }
        }
    }
    Ok(Lemma2bReport {
        d: dim.d,
        structure_sizes: sizes,
        pass,
    })
}
