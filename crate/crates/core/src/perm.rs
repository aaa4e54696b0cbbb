//! Closure of permutation generators into a concrete group table.

use crate::error::GroupError;
use crate::group::{default_names, GroupTable};
use std::collections::HashMap;

/// A permutation of `{0..degree}` in one-line notation.
pub type Permutation = Vec<u16>;

/// Build a permutation from disjoint cycles over 1-based points.
pub fn permutation_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Permutation> {
    let mut p: Permutation = (0..degree as u16).collect();
    for cycle in cycles {
        for i in 0..cycle.len() {
            let from = cycle[i].checked_sub(1)?;
            let to = cycle[(i + 1) % cycle.len()].checked_sub(1)?;
            if from >= degree || to >= degree || p[from] != from as u16 {
                return None;
            }
            p[from] = to as u16;
        }
    }
    Some(p)
}

fn is_bijection(p: &Permutation, degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &v in p {
        if (v as usize) >= degree || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

/// The group generated by the given permutations under composition.
///
/// Elements are numbered by breadth-first discovery from the identity, so the
/// result is deterministic for a fixed generator order. Products compose left
/// to right: `(x*y)(p) = y(x(p))`.
pub fn closure_from_permutations(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<GroupTable, GroupError> {
    for g in generators {
        if !is_bijection(g, degree) {
            return Err(GroupError::InvalidPermutation);
        }
    }
    let compose = |x: &Permutation, y: &Permutation| -> Permutation {
        x.iter().map(|&p| y[p as usize]).collect()
    };

    let identity: Permutation = (0..degree as u16).collect();
    let mut elems: Vec<Permutation> = vec![identity.clone()];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(identity, 0);
    // BFS decomposition: elems[i] = elems[parent] * generators[gen].
    let mut parent: Vec<(u32, usize)> = vec![(0, 0)];
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for (gi, g) in generators.iter().enumerate() {
            let next = compose(&cur, g);
            if !index.contains_key(&next) {
                if elems.len() >= cap {
                    return Err(GroupError::OrderCapExceeded {
                        order: elems.len() + 1,
                        cap,
                    });
                }
                index.insert(next.clone(), elems.len() as u32);
                parent.push((head as u32 - 1, gi));
                elems.push(next);
            }
        }
    }

    let n = elems.len();
    // mult[a][g] by direct composition, then mult[a][b] for b = pb * g via
    // mult[a][b] = mult[mult[a][pb]][g].
    let mut mul_by_gen: Vec<Vec<u32>> = Vec::with_capacity(generators.len());
    for g in generators {
        let col: Vec<u32> = elems.iter().map(|e| index[&compose(e, g)]).collect();
        mul_by_gen.push(col);
    }
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        mult[a * n] = a as u32; // b = identity
        // BFS order guarantees parents are filled before children.
        for b in 1..n {
            let (pb, gi) = parent[b];
            let apb = mult[a * n + pb as usize];
            mult[a * n + b] = mul_by_gen[gi][apb as usize];
        }
    }

    let raw_gens: Vec<u32> = generators.iter().map(|g| index[g]).collect();
    let names = default_names(raw_gens.len());
    GroupTable::from_raw(
        n,
        mult,
        0,
        raw_gens,
        names,
        format!("perm(degree {degree})"),
    )
}
