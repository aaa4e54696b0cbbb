//! Sigma sets of generating pairs, structure classification, and the
//! dimension invariant.
//!
//! For a generating pair (x, y), sigma(x, y) is the union of all conjugates
//! of the cyclic subgroups <x>, <y> and <xy>. A family of generating pairs
//! whose sigma sets intersect trivially is a structure; the dimension of a
//! group is the least size of such a family, with 1 as the sentinel when a
//! non-identity element lies in every sigma set.

use crate::error::BeauvilleError;
use crate::group::{ConjugacyClasses, GroupTable, QuotientMap};
use crate::set::ElementSet;
use rayon::prelude::*;

/// A pair generating the group, with the conventional third element
/// z = (xy)^-1 cached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratingPair {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl GeneratingPair {
    pub fn new(g: &GroupTable, x: u32, y: u32) -> Self {
        GeneratingPair {
            x,
            y,
            z: g.inv(g.mul(x, y)),
        }
    }
}

pub const PRODUCING_PAIR_CAP: usize = 16;

/// One distinct sigma carrier together with the pairs that produce it.
/// Producing pairs are taken over the pruned enumeration domain (x a
/// conjugacy-class representative, y arbitrary) and capped; the full count
/// over that domain is retained.
#[derive(Clone, Debug)]
pub struct SigmaRecord {
    pub carrier: ElementSet,
    pub canonical_pair: GeneratingPair,
    pub producing_pairs: Vec<GeneratingPair>,
    pub producing_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    NotAStructure,
    Derived,
    NonDerived,
    Minimal,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NotAStructure => "not-a-structure",
            Classification::Derived => "derived",
            Classification::NonDerived => "non-derived",
            Classification::Minimal => "minimal",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureFamily {
    pub pairs: Vec<GeneratingPair>,
    pub carriers: Vec<ElementSet>,
    pub classification: Classification,
}

impl StructureFamily {
    pub fn is_structure(&self) -> bool {
        self.classification != Classification::NotAStructure
    }
}

#[derive(Clone, Debug)]
pub struct DimensionResult {
    pub d: usize,
    /// Present iff d >= 2; has exactly d pairs with trivially intersecting
    /// carriers, and no family of d - 1 carriers intersects trivially.
    pub witness: Option<StructureFamily>,
    /// Present iff d = 1: a non-identity element lying in every carrier.
    pub blocking_element: Option<u32>,
    /// For each non-identity element of the union of witness carriers, the
    /// index of a witness carrier excluding it.
    pub certificate: Vec<(u32, usize)>,
}

/// Union of all conjugates of the cyclic subgroup of `e`: the contribution
/// of one element to a sigma set.
fn cone(g: &GroupTable, classes: &ConjugacyClasses, e: u32) -> ElementSet {
    let mut out = ElementSet::empty(g.order());
    let mut p = e;
    loop {
        out.union_with(classes.set(classes.class_of(p)));
        p = g.mul(p, e);
        if p == e {
            break;
        }
    }
    out.insert(g.identity());
    out
}

/// The sigma set of (x, y): all conjugates of all powers of x, y and xy.
/// Generation is not required here; callers filter.
pub fn sigma(g: &GroupTable, classes: &ConjugacyClasses, x: u32, y: u32) -> ElementSet {
    let mut out = cone(g, classes, x);
    out.union_with(&cone(g, classes, y));
    out.union_with(&cone(g, classes, g.mul(x, y)));
    out
}

/// All distinct sigma carriers of generating pairs, each with its canonical
/// (lexicographically least) producing pair. x ranges over conjugacy-class
/// representatives only, which is sound because sigma is conjugation
/// invariant. Output order: ascending carrier size, then carrier encoding.
pub fn enumerate_sigma_records(
    g: &GroupTable,
    classes: &ConjugacyClasses,
) -> Result<Vec<SigmaRecord>, BeauvilleError> {
    let n = g.order() as u32;
    let cones: Vec<ElementSet> = (0..n).map(|e| cone(g, classes, e)).collect();
    let reps = classes.representatives();

    // Per representative, the generating pairs and their carriers, in y order.
    let chunks: Vec<Vec<(ElementSet, u32, u32)>> = reps
        .par_iter()
        .map(|&x| {
            let mut found = Vec::new();
            for y in 0..n {
                if !g.is_generating_pair(x, y) {
                    continue;
                }
                let mut carrier = cones[x as usize].clone();
                carrier.union_with(&cones[y as usize]);
                carrier.union_with(&cones[g.mul(x, y) as usize]);
                found.push((carrier, x, y));
            }
            found
        })
        .collect();

    let mut records: Vec<SigmaRecord> = Vec::new();
    let mut index: std::collections::HashMap<Vec<u64>, usize> = std::collections::HashMap::new();
    for chunk in chunks {
        for (carrier, x, y) in chunk {
            let key = carrier.words().to_vec();
            match index.get(&key) {
                Some(&i) => {
                    let r = &mut records[i];
                    r.producing_count += 1;
                    if r.producing_pairs.len() < PRODUCING_PAIR_CAP {
                        r.producing_pairs.push(GeneratingPair::new(g, x, y));
                    }
                }
                None => {
                    index.insert(key, records.len());
                    let pair = GeneratingPair::new(g, x, y);
                    records.push(SigmaRecord {
                        carrier,
                        canonical_pair: pair,
                        producing_pairs: vec![pair],
                        producing_count: 1,
                    });
                }
            }
        }
    }
    if records.is_empty() {
        return Err(BeauvilleError::NotTwoGenerated);
    }
    records.sort_by(|a, b| {
        (a.carrier.count(), a.carrier.words()).cmp(&(b.carrier.count(), b.carrier.words()))
    });
    Ok(records)
}

/// Classify a family of generating pairs.
pub fn check_structure(
    g: &GroupTable,
    pairs: &[GeneratingPair],
) -> Result<StructureFamily, BeauvilleError> {
    if pairs.is_empty() {
        return Err(BeauvilleError::EmptyFamily);
    }
    for p in pairs {
        if !g.is_generating_pair(p.x, p.y) {
            return Err(BeauvilleError::NotGenerating(p.x, p.y));
        }
    }
    let classes = g.conjugacy_classes();
    let carriers: Vec<ElementSet> = pairs.iter().map(|p| sigma(g, &classes, p.x, p.y)).collect();

    let intersection_of = |chosen: &[usize]| -> ElementSet {
        let mut acc = carriers[chosen[0]].clone();
        for &i in &chosen[1..] {
            acc.intersect_with(&carriers[i]);
        }
        acc
    };

    let all: Vec<usize> = (0..pairs.len()).collect();
    let classification = if !intersection_of(&all).is_trivial() {
        Classification::NotAStructure
    } else if pairs.len() == 2 {
        // A two-pair structure has no proper generating subfamily.
        Classification::Minimal
    } else {
        let n = pairs.len();
        let mut derived = false;
        'subsets: for mask in 1u32..(1 << n) - 1 {
            if mask.count_ones() < 2 {
                continue;
            }
            let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if intersection_of(&chosen).is_trivial() {
                derived = true;
                break 'subsets;
            }
        }
        if derived {
            Classification::Derived
        } else {
            // Non-derived; minimal additionally requires that no smaller
            // structure exists anywhere in the group.
            let dim = beauville_dimension(g)?;
            if dim.d == n {
                Classification::Minimal
            } else {
                Classification::NonDerived
            }
        }
    };
    Ok(StructureFamily {
        pairs: pairs.to_vec(),
        carriers,
        classification,
    })
}

/// Exact dimension with witness or blocking element.
pub fn beauville_dimension(g: &GroupTable) -> Result<DimensionResult, BeauvilleError> {
    if g.order() == 1 {
        return Err(BeauvilleError::DegenerateTrivialGroup);
    }
    let classes = g.conjugacy_classes();
    let records = enumerate_sigma_records(g, &classes)?;
    dimension_from_records(g, &records, true)
}

/// Reference search over all ordered generating pairs with no class-rep
/// pruning, no superset dropping and no branch bounding. For cross-checking
/// the production path on small groups.
pub fn brute_dimension(g: &GroupTable) -> Result<DimensionResult, BeauvilleError> {
    if g.order() == 1 {
        return Err(BeauvilleError::DegenerateTrivialGroup);
    }
    let classes = g.conjugacy_classes();
    let n = g.order() as u32;
    let mut records: Vec<SigmaRecord> = Vec::new();
    let mut index: std::collections::HashMap<Vec<u64>, usize> = std::collections::HashMap::new();
    for x in 0..n {
        for y in 0..n {
            if !g.is_generating_pair(x, y) {
                continue;
            }
            let carrier = sigma(g, &classes, x, y);
            let key = carrier.words().to_vec();
            if let Some(&i) = index.get(&key) {
                records[i].producing_count += 1;
            } else {
                index.insert(key, records.len());
                let pair = GeneratingPair::new(g, x, y);
                records.push(SigmaRecord {
                    carrier,
                    canonical_pair: pair,
                    producing_pairs: vec![pair],
                    producing_count: 1,
                });
            }
        }
    }
    if records.is_empty() {
        return Err(BeauvilleError::NotTwoGenerated);
    }
    dimension_from_records(g, &records, false)
}

fn dimension_from_records(
    g: &GroupTable,
    records: &[SigmaRecord],
    prune: bool,
) -> Result<DimensionResult, BeauvilleError> {
    let order = g.order();
    let mut everywhere = records[0].carrier.clone();
    for r in &records[1..] {
        everywhere.intersect_with(&r.carrier);
    }
    if !everywhere.is_trivial() {
        let blocking = everywhere
            .iter()
            .find(|&e| e != g.identity())
            .expect("non-trivial intersection");
        return Ok(DimensionResult {
            d: 1,
            witness: None,
            blocking_element: Some(blocking),
            certificate: Vec::new(),
        });
    }

    // Supersets never help: swapping one for a subset only shrinks the
    // candidate intersection.
    let mut kept: Vec<&SigmaRecord> = Vec::new();
    if prune {
        for (i, r) in records.iter().enumerate() {
            let dominated = records.iter().enumerate().any(|(j, s)| {
                j != i
                    && s.carrier.is_subset_of(&r.carrier)
                    && (s.carrier.count() < r.carrier.count() || j < i)
            });
            if !dominated {
                kept.push(r);
            }
        }
    } else {
        kept.extend(records.iter());
    }

    let m = kept.len();

    /// Branch on the smallest non-identity element still in every chosen
    /// carrier: any completion must include a carrier excluding it. Complete
    /// for families of size at most the depth budget. The outcome depends
    /// only on the accumulated intersection and the budget, so failed states
    /// are memoized.
    struct CoverSearch<'a> {
        kept: &'a [&'a SigmaRecord],
        identity: u32,
        /// Per element, the carriers excluding it (ascending index).
        excluding: &'a [Vec<u32>],
        failed: Vec<std::collections::HashSet<Vec<u64>>>,
    }

    impl CoverSearch<'_> {
        fn run(&mut self, budget: usize, acc: &ElementSet, chosen: &mut Vec<usize>) -> bool {
            if acc.is_trivial() {
                return true;
            }
            if budget == 0 {
                return false;
            }
            let key = acc.words().to_vec();
            if self.failed[budget].contains(&key) {
                return false;
            }
            let e = acc
                .iter()
                .find(|&e| e != self.identity)
                .expect("acc is non-trivial");
            for idx in 0..self.excluding[e as usize].len() {
                let i = self.excluding[e as usize][idx] as usize;
                let mut next = acc.clone();
                next.intersect_with(&self.kept[i].carrier);
                chosen.push(i);
                if self.run(budget - 1, &next, chosen) {
                    return true;
                }
                chosen.pop();
            }
            self.failed[budget].insert(key);
            false
        }
    }

    /// Plain index-ordered exhaustive search over exactly `remaining` more
    /// carriers, with no bounding: the reference path.
    fn search_exhaustive(
        kept: &[&SigmaRecord],
        start: usize,
        remaining: usize,
        acc: &ElementSet,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return acc.is_trivial();
        }
        if kept.len() - start < remaining {
            return false;
        }
        for i in start..kept.len() {
            let mut next = acc.clone();
            next.intersect_with(&kept[i].carrier);
            chosen.push(i);
            if search_exhaustive(kept, i + 1, remaining - 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let excluding: Vec<Vec<u32>> = (0..order as u32)
        .map(|e| {
            kept.iter()
                .enumerate()
                .filter(|(_, r)| !r.carrier.contains(e))
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    for k in 2..=m {
        let mut chosen = Vec::new();
        let full = ElementSet::full(order);
        let found = if prune {
            let mut cs = CoverSearch {
                kept: &kept,
                identity: g.identity(),
                excluding: &excluding,
                failed: vec![std::collections::HashSet::new(); k + 1],
            };
            cs.run(k, &full, &mut chosen)
        } else {
            search_exhaustive(&kept, 0, k, &full, &mut chosen)
        };
        if found {
            let pairs: Vec<GeneratingPair> =
                chosen.iter().map(|&i| kept[i].canonical_pair).collect();
            let carriers: Vec<ElementSet> =
                chosen.iter().map(|&i| kept[i].carrier.clone()).collect();
            let mut union = ElementSet::empty(order);
            for c in &carriers {
                union.union_with(c);
            }
            let mut certificate = Vec::new();
            for e in union.iter() {
                if e == g.identity() {
                    continue;
                }
                let excl = carriers
                    .iter()
                    .position(|c| !c.contains(e))
                    .expect("trivial intersection excludes every non-identity element");
                certificate.push((e, excl));
            }
            // A family below the dimension cannot intersect trivially, so
            // the witness is automatically minimal.
            let witness = StructureFamily {
                pairs,
                carriers,
                classification: Classification::Minimal,
            };
            return Ok(DimensionResult {
                d: witness.pairs.len(),
                witness: Some(witness),
                blocking_element: None,
                certificate,
            });
        }
    }
    unreachable!("trivial global intersection guarantees some subset works");
}

/// Whether the cyclic subgroup of `e` meets the kernel trivially; for such
/// elements the quotient preserves the element order. Both formulations are
/// computed and must agree.
pub fn is_faithfully_represented(q: &QuotientMap, e: u32) -> bool {
    let g = q.source();
    let mut meets_trivially = true;
    let mut p = e;
    loop {
        if p != g.identity() && q.kernel().contains(p) {
            meets_trivially = false;
            break;
        }
        p = g.mul(p, e);
        if p == e {
            break;
        }
    }
    let order_preserved =
        g.element_order(e) == q.target().element_order(q.image(e));
    assert_eq!(
        meets_trivially, order_preserved,
        "kernel-intersection and order-preservation criteria disagree"
    );
    meets_trivially
}

/// Lift a structure through a quotient map: if the images of the given
/// source pairs form a structure in the target, every source pair generates
/// the source, and at least one source triple (x, y, xy) is faithfully
/// represented, then the source pairs form a structure in the source.
pub fn lift_structure(
    q: &QuotientMap,
    source_pairs: &[GeneratingPair],
) -> Result<StructureFamily, BeauvilleError> {
    if source_pairs.is_empty() {
        return Err(BeauvilleError::EmptyFamily);
    }
    let g = q.source();
    let h = q.target();
    for p in source_pairs {
        if !g.is_generating_pair(p.x, p.y) {
            return Err(BeauvilleError::NotGenerating(p.x, p.y));
        }
    }
    let image_pairs: Vec<GeneratingPair> = source_pairs
        .iter()
        .map(|p| GeneratingPair::new(h, q.image(p.x), q.image(p.y)))
        .collect();
    for p in &image_pairs {
        if !h.is_generating_pair(p.x, p.y) {
            return Err(BeauvilleError::PremiseFailed(format!(
                "image pair ({}, {}) does not generate the quotient",
                p.x, p.y
            )));
        }
    }
    let faithful = source_pairs.iter().any(|p| {
        is_faithfully_represented(q, p.x)
            && is_faithfully_represented(q, p.y)
            && is_faithfully_represented(q, g.mul(p.x, p.y))
    });
    if !faithful {
        return Err(BeauvilleError::PremiseFailed(
            "no source triple (x, y, xy) is faithfully represented".into(),
        ));
    }
    let images = check_structure(h, &image_pairs)?;
    if !images.is_structure() {
        return Err(BeauvilleError::ImagesNotStructure);
    }
    let lifted = check_structure(g, source_pairs)?;
    if !lifted.is_structure() {
        return Err(BeauvilleError::PremiseFailed(
            "lift produced a family with non-trivial common intersection".into(),
        ));
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{build, parse_spec, BuildOptions};

    fn group(text: &str) -> GroupTable {
        build(&parse_spec(text).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn sigma_of_c3c3_generators_has_seven_elements() {
        let g = group("C(3) x C(3)");
        let classes = g.conjugacy_classes();
        let [x, y] = *g.generators() else { panic!() };
        let s = sigma(&g, &classes, x, y);
        assert_eq!(s.count(), 7);
        assert!(s.contains(g.identity()));
    }

    #[test]
    fn sigma_of_cyclic_generator_covers_group() {
        let g = group("C(5)");
        let classes = g.conjugacy_classes();
        let s = sigma(&g, &classes, g.generators()[0], g.identity());
        assert_eq!(s.count(), 5);
    }

    #[test]
    fn c3c3_generating_pair_count() {
        let g = group("C(3) x C(3)");
        let mut count = 0;
        for x in 0..9 {
            for y in 0..9 {
                if g.is_generating_pair(x, y) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 48);
    }

    #[test]
    fn c3c3_has_four_carriers_and_dimension_four() {
        let g = group("C(3) x C(3)");
        let classes = g.conjugacy_classes();
        let records = enumerate_sigma_records(&g, &classes).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.carrier.count(), 7);
        }
        let dim = beauville_dimension(&g).unwrap();
        assert_eq!(dim.d, 4);
        let w = dim.witness.unwrap();
        assert_eq!(w.pairs.len(), 4);
        assert_eq!(w.classification, Classification::Minimal);
    }

    #[test]
    fn c4c4_dimension_one() {
        let g = group("C(4) x C(4)");
        let dim = beauville_dimension(&g).unwrap();
        assert_eq!(dim.d, 1);
        let b = dim.blocking_element.unwrap();
        assert_ne!(b, g.identity());
    }

    #[test]
    fn c5c5_dimension_two() {
        let g = group("C(5) x C(5)");
        let dim = beauville_dimension(&g).unwrap();
        assert_eq!(dim.d, 2);
    }

    #[test]
    fn brute_matches_pruned_on_samples() {
        for text in ["C(5) x C(5)", "C(3) x C(3)", "C(7)", "perm(4; (1 2 3), (1 2)(3 4))"] {
            let g = group(text);
            let a = beauville_dimension(&g).unwrap().d;
            let b = brute_dimension(&g).unwrap().d;
            assert_eq!(a, b, "{text}");
        }
    }

    #[test]
    fn trivial_group_is_degenerate() {
        let g = group("C(1)");
        assert!(matches!(
            beauville_dimension(&g),
            Err(BeauvilleError::DegenerateTrivialGroup)
        ));
    }

    #[test]
    fn q8_is_not_two_generated_but_has_pairs() {
        // Q8 is 2-generated; a genuinely non-2-generated example: C2^3.
        let g = group("(C(2) x C(2)) x C(2)");
        assert!(matches!(
            beauville_dimension(&g),
            Err(BeauvilleError::NotTwoGenerated)
        ));
    }

    #[test]
    fn certificate_is_valid() {
        let g = group("C(5) x C(5)");
        let dim = beauville_dimension(&g).unwrap();
        let w = dim.witness.unwrap();
        let mut union = ElementSet::empty(g.order());
        for c in &w.carriers {
            union.union_with(c);
        }
        let mut covered = 0;
        for &(e, i) in &dim.certificate {
            assert!(union.contains(e));
            assert!(!w.carriers[i].contains(e));
            covered += 1;
        }
        assert_eq!(covered, union.count() - 1);
    }

    #[test]
    fn two_pair_structure_is_minimal_by_convention() {
        let g = group("C(5) x C(5)");
        let dim = beauville_dimension(&g).unwrap();
        let w = dim.witness.unwrap();
        let s = check_structure(&g, &w.pairs).unwrap();
        assert_eq!(s.classification, Classification::Minimal);
    }

    #[test]
    fn lift_through_trivial_quotient_is_identity() {
        let g = group("C(5) x C(5)");
        let n = ElementSet::singleton(g.order(), g.identity());
        let q = g.quotient(&n).unwrap();
        let dim = beauville_dimension(&g).unwrap();
        let pairs = dim.witness.unwrap().pairs;
        let source_pairs: Vec<GeneratingPair> = pairs
            .iter()
            .map(|p| GeneratingPair::new(q.source(), p.x, p.y))
            .collect();
        let fam = lift_structure(&q, &source_pairs).unwrap();
        assert!(fam.is_structure());
    }

    #[test]
    fn faithful_representation_criteria() {
        let g = group("C(3) x C(3)");
        // Kernel: the subgroup generated by the first generator.
        let n = g.cyclic_subgroup(g.generators()[0]);
        let q = g.quotient(&n).unwrap();
        assert!(is_faithfully_represented(&q, g.identity()));
        assert!(!is_faithfully_represented(&q, g.generators()[0]));
        assert!(is_faithfully_represented(&q, g.generators()[1]));
    }
}
