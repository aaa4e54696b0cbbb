//! Concrete finite groups as dense multiplication tables.
//!
//! Element indices run over `0..order` with the identity always at index 0.
//! Every constructor renumbers elements breadth-first from the designated
//! generators, so numbering is deterministic for a fixed construction.

use crate::error::GroupError;
use crate::set::ElementSet;
use crate::util::SplitMix64;

pub const DEFAULT_ORDER_CAP: usize = 5000;

/// A finite group given by its full Cayley table.
///
/// Immutable after construction; safe to share across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
    gen_names: Vec<String>,
    label: String,
}

impl GroupTable {
    /// Build from a raw table, renumbering elements breadth-first from the
    /// generators and checking the group laws.
    ///
    /// `mult` is row-major: `mult[a * order + b] = a * b` in raw indices.
    pub fn from_raw(
        order: usize,
        mult: Vec<u32>,
        raw_identity: u32,
        raw_generators: Vec<u32>,
        gen_names: Vec<String>,
        label: String,
    ) -> Result<Self, GroupError> {
        assert_eq!(mult.len(), order * order);
        assert_eq!(raw_generators.len(), gen_names.len());
        let at = |a: u32, b: u32| mult[a as usize * order + b as usize];

        // BFS numbering: identity first, then right-multiply by generators.
        let mut new_of = vec![u32::MAX; order];
        let mut old_of = Vec::with_capacity(order);
        new_of[raw_identity as usize] = 0;
        old_of.push(raw_identity);
        let mut head = 0;
        while head < old_of.len() {
            let a = old_of[head];
            head += 1;
            for &g in &raw_generators {
                let b = at(a, g);
                if new_of[b as usize] == u32::MAX {
                    new_of[b as usize] = old_of.len() as u32;
                    old_of.push(b);
                }
            }
        }
        if old_of.len() != order {
            return Err(GroupError::InvalidTable(
                "designated generators do not generate the group".into(),
            ));
        }

        let mut table = vec![0u32; order * order];
        for a in 0..order as u32 {
            for b in 0..order as u32 {
                table[new_of[a as usize] as usize * order + new_of[b as usize] as usize] =
                    new_of[at(a, b) as usize];
            }
        }
        let generators: Vec<u32> = raw_generators.iter().map(|&g| new_of[g as usize]).collect();

        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }

        let g = GroupTable {
            order,
            mult: table,
            inv,
            generators,
            gen_names,
            label,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        let bad = |m: &str| Err(GroupError::InvalidTable(m.into()));
        for a in 0..n as u32 {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return bad("identity law");
            }
            if self.inv[a as usize] == u32::MAX || self.mul(a, self.inv(a)) != 0 {
                return bad("inverse law");
            }
        }
        // Latin-square property: each row and column is a permutation.
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for a in 0..n as u32 {
            seen_row.iter_mut().for_each(|s| *s = false);
            seen_col.iter_mut().for_each(|s| *s = false);
            for b in 0..n as u32 {
                let r = self.mul(a, b) as usize;
                let c = self.mul(b, a) as usize;
                if seen_row[r] || seen_col[c] {
                    return bad("Latin-square property");
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Associativity: exhaustive for small orders, sampled above.
        if n <= 200 {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    let ab = self.mul(a, b);
                    for c in 0..n as u32 {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return bad("associativity");
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x9e3779b97f4a7c15);
            for _ in 0..10_000 {
                let a = (rng.next() % n as u64) as u32;
                let b = (rng.next() % n as u64) as u32;
                let c = (rng.next() % n as u64) as u32;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return bad("associativity (sampled)");
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn conjugate(&self, x: u32, by: u32) -> u32 {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    /// Rename the designated generators (for display and word evaluation).
    pub fn with_gen_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.generators.len());
        self.gen_names = names;
        self
    }

    pub fn element_order(&self, x: u32) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn power(&self, x: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// The cyclic subgroup `{x^i}` as a set.
    pub fn cyclic_subgroup(&self, x: u32) -> ElementSet {
        let mut s = ElementSet::singleton(self.order, 0);
        let mut p = x;
        while p != 0 {
            s.insert(p);
            p = self.mul(p, x);
        }
        s
    }

    /// Smallest subset containing `seeds` and the identity, closed under
    /// multiplication and inversion.
    pub fn subgroup_generated(&self, seeds: &[u32]) -> ElementSet {
        let mut set = ElementSet::singleton(self.order, 0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &s in seeds {
                for b in [self.mul(a, s), self.mul(a, self.inv(s))] {
                    if !set.contains(b) {
                        set.insert(b);
                        queue.push(b);
                    }
                }
            }
        }
        set
    }

    pub fn is_generating_pair(&self, x: u32, y: u32) -> bool {
        self.subgroup_generated(&[x, y]).count() == self.order
    }

    /// Elements commuting with everything (it suffices to commute with the
    /// designated generators).
    pub fn center(&self) -> ElementSet {
        let mut s = ElementSet::empty(self.order);
        'outer: for a in 0..self.order as u32 {
            for &g in &self.generators {
                if self.mul(a, g) != self.mul(g, a) {
                    continue 'outer;
                }
            }
            s.insert(a);
        }
        s
    }

    /// Smallest subgroup containing `seeds` closed under conjugation by the
    /// whole group.
    pub fn normal_closure(&self, seeds: &[u32]) -> ElementSet {
        let mut seeds: Vec<u32> = seeds.to_vec();
        loop {
            let sub = self.subgroup_generated(&seeds);
            let mut grew = false;
            for t in sub.iter() {
                for &g in &self.generators {
                    let c = self.conjugate(t, g);
                    if !sub.contains(c) {
                        seeds.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order;
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        let mut sets: Vec<ElementSet> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![start];
            let mut set = ElementSet::singleton(n, start);
            class_of[start as usize] = id;
            let mut head = 0;
            while head < members.len() {
                let a = members[head];
                head += 1;
                for &g in &self.generators {
                    let c = self.conjugate(a, g);
                    if class_of[c as usize] == u32::MAX {
                        class_of[c as usize] = id;
                        set.insert(c);
                        members.push(c);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
            sets.push(set);
        }
        ConjugacyClasses {
            class_of,
            classes,
            sets,
        }
    }

    /// Breadth-first decomposition of every element as `parent * generator`.
    /// Entry for the identity is `None`. Deterministic; parents always have a
    /// smaller index than their children.
    pub fn bfs_decomposition(&self) -> Vec<Option<(u32, usize)>> {
        let mut dec = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (gi, &g) in self.generators.iter().enumerate() {
                let b = self.mul(a, g);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    dec[b as usize] = Some((a, gi));
                    queue.push(b);
                }
            }
        }
        dec
    }

    /// Extend a generator-image assignment to a map on the whole group and
    /// verify it is an automorphism.
    pub fn extend_automorphism(&self, gen_images: &[u32]) -> Result<Vec<u32>, GroupError> {
        assert_eq!(gen_images.len(), self.generators.len());
        let dec = self.bfs_decomposition();
        let mut phi = vec![0u32; self.order];
        for b in 1..self.order {
            let (parent, gi) = dec[b].expect("generators generate the group");
            phi[b] = self.mul(phi[parent as usize], gen_images[gi]);
        }
        // Bijectivity.
        let mut hit = vec![false; self.order];
        for &v in &phi {
            if hit[v as usize] {
                return Err(GroupError::NotAnAutomorphism);
            }
            hit[v as usize] = true;
        }
        // Homomorphism law, exhaustive at desk scale and sampled above.
        if self.order <= 1024 {
            for a in 0..self.order as u32 {
                for b in 0..self.order as u32 {
                    if phi[self.mul(a, b) as usize]
                        != self.mul(phi[a as usize], phi[b as usize])
                    {
                        return Err(GroupError::NotAnAutomorphism);
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x8ad1_3c55);
            for _ in 0..20_000 {
                let a = (rng.next() % self.order as u64) as u32;
                let b = (rng.next() % self.order as u64) as u32;
                if phi[self.mul(a, b) as usize] != self.mul(phi[a as usize], phi[b as usize]) {
                    return Err(GroupError::NotAnAutomorphism);
                }
            }
        }
        Ok(phi)
    }

    /// Cyclic group of order `n`, generator named `a` (no generator for the
    /// trivial group).
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        assert!(n >= 1);
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let (gens, names) = if n == 1 {
            (vec![], vec![])
        } else {
            (vec![1u32], vec!["a".to_string()])
        };
        GroupTable::from_raw(n, mult, 0, gens, names, format!("C({n})"))
    }

    /// Direct product with componentwise multiplication. Also returns the
    /// embeddings of the two factors into the product.
    pub fn direct_product_with_embeddings(
        g: &GroupTable,
        h: &GroupTable,
        cap: usize,
    ) -> Result<(GroupTable, Vec<u32>, Vec<u32>), GroupError> {
        let (ng, nh) = (g.order, h.order);
        let n = ng
            .checked_mul(nh)
            .filter(|&n| n <= cap)
            .ok_or(GroupError::OrderCapExceeded {
                order: ng.saturating_mul(nh),
                cap,
            })?;
        let pair = |a: u32, b: u32| a * nh as u32 + b;
        let mut mult = vec![0u32; n * n];
        for a1 in 0..ng as u32 {
            for b1 in 0..nh as u32 {
                for a2 in 0..ng as u32 {
                    for b2 in 0..nh as u32 {
                        mult[pair(a1, b1) as usize * n + pair(a2, b2) as usize] =
                            pair(g.mul(a1, a2), h.mul(b1, b2));
                    }
                }
            }
        }
        // Diagonal generating pair when coprime and both factors are
        // 2-generated; otherwise the union of the embedded generators.
        let coprime = gcd(ng, nh) == 1;
        let mut raw_gens = Vec::new();
        let mut names = Vec::new();
        if coprime && g.generators.len() == 2 && h.generators.len() == 2 {
            raw_gens.push(pair(g.generators[0], h.generators[0]));
            raw_gens.push(pair(g.generators[1], h.generators[1]));
            names.push("a".to_string());
            names.push("b".to_string());
        } else {
            for &x in &g.generators {
                raw_gens.push(pair(x, 0));
            }
            for &y in &h.generators {
                raw_gens.push(pair(0, y));
            }
            names = default_names(raw_gens.len());
        }
        let label = format!("{} x {}", g.label, h.label);
        let table = GroupTable::from_raw(n, mult, 0, raw_gens, names, label)?;
        // from_raw does not expose its renumbering, so recompute it to get
        // the factor embeddings in canonical indices.
        let (emb_g, emb_h) = product_embeddings(g, h);
        Ok((table, emb_g, emb_h))
    }

    pub fn direct_product(g: &GroupTable, h: &GroupTable, cap: usize) -> Result<Self, GroupError> {
        Ok(Self::direct_product_with_embeddings(g, h, cap)?.0)
    }

    /// Semidirect product `base : actor`. `action[i]` lists the images of the
    /// base generators under the `i`-th actor generator.
    pub fn semidirect_product(
        base: &GroupTable,
        actor: &GroupTable,
        action: &[Vec<u32>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        assert_eq!(action.len(), actor.generators.len());
        let (nb, na) = (base.order, actor.order);
        let n = nb
            .checked_mul(na)
            .filter(|&n| n <= cap)
            .ok_or(GroupError::OrderCapExceeded {
                order: nb.saturating_mul(na),
                cap,
            })?;

        // One automorphism of the base per actor generator.
        let mut gen_autos = Vec::with_capacity(action.len());
        for images in action {
            assert_eq!(images.len(), base.generators.len());
            gen_autos.push(base.extend_automorphism(images)?);
        }
        // Extend to all actor elements along the actor's BFS tree:
        // phi_{p * g} = phi_p . phi_g.
        let dec = actor.bfs_decomposition();
        let id_auto: Vec<u32> = (0..nb as u32).collect();
        let mut autos: Vec<Vec<u32>> = vec![id_auto; na];
        for a in 1..na {
            let (parent, gi) = dec[a].expect("actor generators generate");
            let pa = autos[parent as usize].clone();
            let pg = &gen_autos[gi];
            autos[a] = (0..nb).map(|x| pa[pg[x] as usize]).collect();
        }
        // The extension must be a homomorphism actor -> Aut(base).
        // Exhaustive for small actors, sampled otherwise.
        let check = |a1: u32, a2: u32, autos: &[Vec<u32>]| -> bool {
            let composed: Vec<u32> = (0..nb)
                .map(|x| autos[a1 as usize][autos[a2 as usize][x] as usize])
                .collect();
            autos[actor.mul(a1, a2) as usize] == composed
        };
        if na <= 64 {
            for a1 in 0..na as u32 {
                for a2 in 0..na as u32 {
                    if !check(a1, a2, &autos) {
                        return Err(GroupError::ActionNotHomomorphic);
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x51ab_77e3);
            for _ in 0..10_000 {
                let a1 = (rng.next() % na as u64) as u32;
                let a2 = (rng.next() % na as u64) as u32;
                if !check(a1, a2, &autos) {
                    return Err(GroupError::ActionNotHomomorphic);
                }
            }
        }

        // (b1, a1)(b2, a2) = (b1 * phi_{a1}(b2), a1 * a2)
        let pair = |b: u32, a: u32| b * na as u32 + a;
        let mut mult = vec![0u32; n * n];
        for b1 in 0..nb as u32 {
            for a1 in 0..na as u32 {
                let phi = &autos[a1 as usize];
                for b2 in 0..nb as u32 {
                    for a2 in 0..na as u32 {
                        mult[pair(b1, a1) as usize * n + pair(b2, a2) as usize] =
                            pair(base.mul(b1, phi[b2 as usize]), actor.mul(a1, a2));
                    }
                }
            }
        }
        let mut raw_gens: Vec<u32> = base.generators.iter().map(|&b| pair(b, 0)).collect();
        raw_gens.extend(actor.generators.iter().map(|&a| pair(0, a)));
        let names = default_names(raw_gens.len());
        let label = format!("sd({}, {})", base.label, actor.label);
        GroupTable::from_raw(n, mult, 0, raw_gens, names, label)
    }

    /// Quotient by a normal subgroup given as an element set.
    pub fn quotient(&self, normal: &ElementSet) -> Result<QuotientMap, GroupError> {
        let n = self.order;
        assert_eq!(normal.universe(), n);
        // Subgroup check.
        if !normal.contains(0) {
            return Err(GroupError::NotSubgroup);
        }
        let members: Vec<u32> = normal.iter().collect();
        for &a in &members {
            if !normal.contains(self.inv(a)) {
                return Err(GroupError::NotSubgroup);
            }
            for &b in &members {
                if !normal.contains(self.mul(a, b)) {
                    return Err(GroupError::NotSubgroup);
                }
            }
        }
        // Normality: closed under conjugation by the generators.
        for &a in &members {
            for &g in &self.generators {
                if !normal.contains(self.conjugate(a, g)) {
                    return Err(GroupError::NotNormal);
                }
            }
        }

        // Cosets, represented by their minimum element; scanning elements in
        // ascending order assigns target indices in increasing-rep order.
        let m = n / members.len();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(m);
        for a in 0..n as u32 {
            if coset_of[a as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(a);
            for &x in &members {
                coset_of[self.mul(a, x) as usize] = idx;
            }
        }
        let mut mult = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                mult[i * m + j] = coset_of[self.mul(reps[i], reps[j]) as usize];
            }
        }
        let mut raw_gens = Vec::new();
        let mut names = Vec::new();
        for (k, &g) in self.generators.iter().enumerate() {
            let img = coset_of[g as usize];
            if img != 0 && !raw_gens.contains(&img) {
                raw_gens.push(img);
                names.push(self.gen_names[k].clone());
            }
        }
        if raw_gens.is_empty() && m > 1 {
            return Err(GroupError::InvalidTable(
                "quotient images of generators do not generate".into(),
            ));
        }
        let label = format!("{} / N{}", self.label, members.len());
        let target = GroupTable::from_raw(m, mult.clone(), 0, raw_gens.clone(), names, label)?;
        // Compose the coset map with the canonical renumbering of the target.
        let raw_to_canon = raw_renumbering(m, |i, j| mult[i as usize * m + j as usize], &raw_gens);
        let image: Vec<u32> = (0..n)
            .map(|a| raw_to_canon[coset_of[a] as usize])
            .collect();
        Ok(QuotientMap {
            source: self.clone(),
            target,
            image,
            kernel: normal.clone(),
        })
    }
}

/// Recompute the BFS renumbering `from_raw` applies, for callers that need to
/// track raw indices through canonicalization.
fn raw_renumbering(order: usize, at: impl Fn(u32, u32) -> u32, raw_gens: &[u32]) -> Vec<u32> {
    let mut new_of = vec![u32::MAX; order];
    let mut queue = vec![0u32];
    new_of[0] = 0;
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        for &g in raw_gens {
            let b = at(a, g);
            if new_of[b as usize] == u32::MAX {
                new_of[b as usize] = queue.len() as u32;
                queue.push(b);
            }
        }
    }
    new_of
}

fn product_embeddings(g: &GroupTable, h: &GroupTable) -> (Vec<u32>, Vec<u32>) {
    // Re-derive the raw pair numbering and the canonical renumbering used in
    // direct_product_with_embeddings.
    let (ng, nh) = (g.order, h.order);
    let pair = |a: u32, b: u32| a * nh as u32 + b;
    let coprime = gcd(ng, nh) == 1;
    let mut raw_gens = Vec::new();
    if coprime && g.generators.len() == 2 && h.generators.len() == 2 {
        raw_gens.push(pair(g.generators[0], h.generators[0]));
        raw_gens.push(pair(g.generators[1], h.generators[1]));
    } else {
        for &x in &g.generators {
            raw_gens.push(pair(x, 0));
        }
        for &y in &h.generators {
            raw_gens.push(pair(0, y));
        }
    }
    let at = |p: u32, q: u32| {
        let (a1, b1) = (p / nh as u32, p % nh as u32);
        let (a2, b2) = (q / nh as u32, q % nh as u32);
        pair(g.mul(a1, a2), h.mul(b1, b2))
    };
    let new_of = raw_renumbering(ng * nh, at, &raw_gens);
    let emb_g: Vec<u32> = (0..ng as u32).map(|a| new_of[pair(a, 0) as usize]).collect();
    let emb_h: Vec<u32> = (0..nh as u32).map(|b| new_of[pair(0, b) as usize]).collect();
    (emb_g, emb_h)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn default_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// The partition of a group into conjugacy classes, ordered by minimum
/// element index.
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
    sets: Vec<ElementSet>,
}

impl ConjugacyClasses {
    pub fn class_of(&self, x: u32) -> u32 {
        self.class_of[x as usize]
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn set(&self, class: u32) -> &ElementSet {
        &self.sets[class as usize]
    }

    /// Minimum-index representative of each class.
    pub fn representatives(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// A surjective homomorphism realized as an index map onto a quotient table.
pub struct QuotientMap {
    source: GroupTable,
    target: GroupTable,
    image: Vec<u32>,
    kernel: ElementSet,
}

impl QuotientMap {
    pub fn source(&self) -> &GroupTable {
        &self.source
    }

    pub fn target(&self) -> &GroupTable {
        &self.target
    }

    pub fn image(&self, a: u32) -> u32 {
        self.image[a as usize]
    }

    pub fn kernel(&self) -> &ElementSet {
        &self.kernel
    }
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({}, order {})", self.label, self.order)
    }
}
