//! Todd-Coxeter coset enumeration over the trivial subgroup, and realization
//! of finitely presented groups as concrete tables via the regular action.
//!
//! Strategy: HLT relator tracing with union-find coincidence processing. The
//! scan order is fixed (relators in declaration order, cosets in creation
//! order) so coset numbering is reproducible.

use crate::error::{EnumError, GroupError};
use crate::group::GroupTable;
use crate::word::Word;
use std::collections::{HashMap, VecDeque};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// A finite presentation: named generators and a list of relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn gen_index(&self) -> HashMap<String, usize> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect()
    }
}

const UNDEF: u32 = u32::MAX;

/// A completed coset table: for each live coset, the action of every
/// generator and inverse generator.
#[derive(Debug)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<u32>,
    order: usize,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Image of `coset` under right multiplication by generator `g`.
    pub fn action(&self, coset: u32, g: usize) -> u32 {
        self.rows[coset as usize * 2 * self.ngens + 2 * g]
    }

    pub fn action_inv(&self, coset: u32, g: usize) -> u32 {
        self.rows[coset as usize * 2 * self.ngens + 2 * g + 1]
    }
}

struct Enumerator {
    ncols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>, // union-find over cosets; dead cosets point elsewhere
    live: usize,
    max_cosets: usize,
    queue: VecDeque<u32>,
    deductions: Vec<(u32, usize)>,
}

/// Raised internally when the allocation budget is exhausted mid-scan; the
/// driver then runs a lookahead pass and compacts before retrying.
struct TableFull;

impl Enumerator {
    fn new(ngens: usize, max_cosets: usize) -> Self {
        let ncols = 2 * ngens;
        Enumerator {
            ncols,
            rows: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
            max_cosets,
            queue: VecDeque::new(),
            deductions: Vec::new(),
        }
    }

    fn ncosets(&self) -> usize {
        self.parent.len()
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != r {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = r;
            cur = next;
        }
        r
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.rows[c as usize * self.ncols + x] = v;
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, TableFull> {
        if self.ncosets() >= self.max_cosets {
            return Err(TableFull);
        }
        let b = self.ncosets() as u32;
        self.rows.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(b);
        self.live += 1;
        self.set(c, x, b);
        self.set(b, x ^ 1, c);
        self.deductions.push((c, x));
        self.deductions.push((b, x ^ 1));
        Ok(b)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop as usize] = keep;
            self.live -= 1;
            self.queue.push_back(drop);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(dead) = self.queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, x ^ 1);
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    }
                }
                // The dead row witnessed mu.x = nu; re-establish it between
                // the current representatives so no table entry is lost.
                let m = self.rep(mu);
                let v = self.rep(nu);
                if self.get(m, x) == UNDEF {
                    self.set(m, x, v);
                    self.set(v, x ^ 1, m);
                    self.deductions.push((m, x));
                    self.deductions.push((v, x ^ 1));
                } else if self.get(v, x ^ 1) == UNDEF {
                    self.set(v, x ^ 1, m);
                    self.deductions.push((v, x ^ 1));
                }
            }
        }
    }

    /// Table lookup normalized through the union-find: stale entries may
    /// point at dead cosets after coincidences.
    fn walk(&mut self, c: u32, x: usize) -> u32 {
        let v = self.get(c, x);
        if v == UNDEF {
            UNDEF
        } else {
            self.rep(v)
        }
    }

    /// Trace `rel` from `start`, defining new cosets to fill gaps.
    fn scan_and_fill(&mut self, start: u32, rel: &[usize]) -> Result<(), TableFull> {
        loop {
            let start = self.rep(start);
            let mut f = start;
            let mut i = 0;
            while i < rel.len() {
                let next = self.walk(f, rel[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == rel.len() {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            let mut b = start;
            let mut j = rel.len();
            while j > i + 1 {
                let prev = self.walk(b, rel[j - 1] ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i + 1 {
                // One undefined entry: a deduction closes the scan.
                self.set(f, rel[i], b);
                self.set(b, rel[i] ^ 1, f);
                self.deductions.push((f, rel[i]));
                self.deductions.push((b, rel[i] ^ 1));
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    /// Deduction-only scan of `rel` at `start`: close one-gap scans and
    /// report mismatches as coincidences, but never define new cosets.
    fn scan(&mut self, start: u32, rel: &[usize]) {
        let start = self.rep(start);
        let mut f = start;
        let mut i = 0;
        while i < rel.len() {
            let next = self.walk(f, rel[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == rel.len() {
            if f != start {
                self.coincidence(f, start);
            }
            return;
        }
        let mut b = start;
        let mut j = rel.len();
        while j > i + 1 {
            let prev = self.walk(b, rel[j - 1] ^ 1);
            if prev == UNDEF {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i + 1 {
            self.set(f, rel[i], b);
            self.set(b, rel[i] ^ 1, f);
            self.deductions.push((f, rel[i]));
            self.deductions.push((b, rel[i] ^ 1));
        }
    }

    /// Drain the deduction stack: every fresh table entry triggers scans of
    /// the relator rotations led by its column.
    fn propagate(&mut self, by_lead: &[Vec<Vec<usize>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            let c = self.rep(c);
            if self.get(c, x) == UNDEF {
                continue;
            }
            for rel in &by_lead[x] {
                self.scan(c, rel);
                if self.get(c, x) == UNDEF || !self.alive(c) {
                    break;
                }
            }
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        for c in 0..self.ncosets() as u32 {
            if !self.alive(c) {
                continue;
            }
            for rel in rels {
                self.scan(c, rel);
                if !self.alive(c) {
                    break;
                }
            }
        }
    }

    /// Renumber live cosets, preserving creation order. Returns old-to-new.
    fn compact(&mut self) -> Vec<u32> {
        let old_n = self.ncosets();
        let mut map = vec![UNDEF; old_n];
        let mut next = 0u32;
        for c in 0..old_n as u32 {
            if self.alive(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut rows = vec![UNDEF; next as usize * self.ncols];
        for c in 0..old_n as u32 {
            if !self.alive(c) {
                continue;
            }
            let nc = map[c as usize] as usize;
            for x in 0..self.ncols {
                let v = self.get(c, x);
                if v != UNDEF {
                    let v = self.rep(v);
                    rows[nc * self.ncols + x] = map[v as usize];
                }
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        self.live = next as usize;
        map
    }

    fn is_total(&self) -> bool {
        (0..self.ncosets() as u32).all(|c| {
            !self.alive(c) || (0..self.ncols).all(|x| self.get(c, x) != UNDEF)
        })
    }
}

/// Enumerate the cosets of the trivial subgroup. On success the live-coset
/// count is the group order.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable, EnumError> {
    let gen_index = p.gen_index();
    let mut rels: Vec<Vec<usize>> = Vec::new();
    for r in &p.relators {
        let letters = r.letters(&gen_index)?;
        let mut cols: Vec<usize> = letters
            .iter()
            .map(|&l| {
                let g = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    2 * g
                } else {
                    2 * g + 1
                }
            })
            .collect();
        // Cyclic reduction preserves the normal closure.
        while cols.len() >= 2 && cols[0] == *cols.last().unwrap() ^ 1 {
            cols.remove(0);
            cols.pop();
        }
        if !cols.is_empty() {
            rels.push(cols);
        }
    }
    // Rotations of every relator, grouped by leading column, so a new table
    // entry can be propagated through every scan it might complete.
    let ncols = 2 * p.gens.len();
    let mut by_lead: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ncols];
    for r in &rels {
        for i in 0..r.len() {
            let rot: Vec<usize> = r[i..].iter().chain(r[..i].iter()).copied().collect();
            let bucket = &mut by_lead[rot[0]];
            if !bucket.contains(&rot) {
                bucket.push(rot);
            }
        }
    }

    let mut tc = Enumerator::new(p.gens.len(), max_cosets);
    let lookahead_at = max_cosets / 2;
    loop {
        let mut alpha: u32 = 0;
        let mut clean = true;
        'outer: while (alpha as usize) < tc.ncosets() {
            if !tc.alive(alpha) {
                alpha += 1;
                continue;
            }
            if tc.live > lookahead_at && tc.ncosets() > tc.live + lookahead_at / 4 {
                tc.lookahead(&rels);
                tc.propagate(&by_lead);
                let r = tc.rep(alpha);
                let map = tc.compact();
                alpha = map[r as usize];
                clean = false;
            }
            for rel in &rels {
                match tc.scan_and_fill(alpha, rel) {
                    Ok(()) => tc.propagate(&by_lead),
                    Err(TableFull) => {
                        // Lookahead, then reclaim dead rows and retry.
                        tc.lookahead(&rels);
                        tc.propagate(&by_lead);
                        if tc.live >= tc.max_cosets {
                            return Err(EnumError::CosetLimitExceeded(max_cosets));
                        }
                        let r = tc.rep(alpha);
                        let map = tc.compact();
                        debug_assert_ne!(map[r as usize], UNDEF);
                        alpha = map[r as usize];
                        clean = false;
                        continue 'outer;
                    }
                }
                if !tc.alive(alpha) {
                    break;
                }
            }
            if tc.alive(alpha) {
                for x in 0..tc.ncols {
                    if tc.get(alpha, x) == UNDEF {
                        match tc.define(alpha, x) {
                            Ok(_) => tc.propagate(&by_lead),
                            Err(TableFull) => {
                                tc.lookahead(&rels);
                                tc.propagate(&by_lead);
                                if tc.live >= tc.max_cosets {
                                    return Err(EnumError::CosetLimitExceeded(max_cosets));
                                }
                                let r = tc.rep(alpha);
                                let map = tc.compact();
                                alpha = map[r as usize];
                                clean = false;
                                continue 'outer;
                            }
                        }
                        if !tc.alive(alpha) {
                            break;
                        }
                    }
                }
            }
            alpha += 1;
        }
        // Confirmation pass: with a total table every relator must close at
        // every coset; any residual mismatch collapses further.
        let live_before = tc.live;
        tc.lookahead(&rels);
        tc.propagate(&by_lead);
        if clean && tc.live == live_before && tc.is_total() {
            break;
        }
    }
    let map = tc.compact();
    let _ = map;
    debug_assert!(tc.is_total());
    Ok(CosetTable {
        ngens: p.gens.len(),
        order: tc.live,
        rows: tc.rows,
    })
}

/// Build the group of the regular action from a completed coset table.
/// Every relator of `p` evaluates to the identity in the result.
pub fn realize(p: &Presentation, t: &CosetTable) -> Result<GroupTable, GroupError> {
    let n = t.order();
    let ngens = p.gens.len();
    // BFS renumbering from the identity coset over the generator actions.
    let mut new_of = vec![UNDEF; n];
    let mut old_of = Vec::with_capacity(n);
    let mut dec: Vec<(u32, usize)> = vec![(0, 0); n]; // parent (new idx), generator
    new_of[0] = 0;
    old_of.push(0u32);
    let mut head = 0;
    while head < old_of.len() {
        let a_old = old_of[head];
        let a_new = head as u32;
        head += 1;
        for g in 0..ngens {
            let b_old = t.action(a_old, g);
            if new_of[b_old as usize] == UNDEF {
                let b_new = old_of.len() as u32;
                new_of[b_old as usize] = b_new;
                dec[b_new as usize] = (a_new, g);
                old_of.push(b_old);
            }
        }
    }
    if old_of.len() != n {
        return Err(GroupError::InvalidTable(
            "coset action is not transitive".into(),
        ));
    }
    // Generator action in new indices.
    let act: Vec<Vec<u32>> = (0..ngens)
        .map(|g| {
            (0..n)
                .map(|a_new| new_of[t.action(old_of[a_new], g) as usize])
                .collect()
        })
        .collect();
    // mult[a][b] for b = parent * g: a*b = (a * parent) * g.
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        mult[a * n] = a as u32;
        for b in 1..n {
            let (pb, g) = dec[b];
            let apb = mult[a * n + pb as usize];
            mult[a * n + b] = act[g][apb as usize];
        }
    }
    let raw_gens: Vec<u32> = (0..ngens).map(|g| act[g][0]).collect();
    let label = format!("fp({})", p.gens.join(","));
    let table = GroupTable::from_raw(n, mult, 0, raw_gens, p.gens.clone(), label)?;
    // Relator check in the realized group.
    let assignment: HashMap<String, u32> = p
        .gens
        .iter()
        .cloned()
        .zip(table.generators().iter().copied())
        .collect();
    for r in &p.relators {
        let v = crate::word::evaluate_word(&table, &assignment, r)
            .map_err(|e| GroupError::InvalidTable(e.to_string()))?;
        if v != table.identity() {
            return Err(GroupError::InvalidTable(format!(
                "relator {r} does not evaluate to the identity"
            )));
        }
    }
    Ok(table)
}
