//! Dense bit-vector sets over element indices `0..n`.

/// A subset of the elements of a fixed finite group, stored as a bit vector.
///
/// All set algebra is exact; the universe size `len` is fixed at creation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    len: usize,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet {
            len,
            bits: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.bits.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, e: u32) -> Self {
        let mut s = Self::empty(len);
        s.insert(e);
        s
    }

    /// Universe size (the group order), not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, e: u32) {
        debug_assert!((e as usize) < self.len);
        self.bits[e as usize / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: u32) {
        self.bits[e as usize / 64] &= !(1 << (e % 64));
    }

    pub fn contains(&self, e: u32) -> bool {
        (self.bits[e as usize / 64] >> (e % 64)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in s.bits.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// True when the set is exactly `{identity}` (element index 0).
    pub fn is_trivial(&self) -> bool {
        self.bits[0] == 1 && self.bits[1..].iter().all(|w| *w == 0)
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<u32> {
        for (i, w) in self.bits.iter().enumerate() {
            if *w != 0 {
                return Some((i * 64) as u32 + w.trailing_zeros());
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, w)| {
            let w = *w;
            (0..64)
                .filter(move |b| (w >> b) & 1 == 1)
                .map(move |b| (i * 64 + b) as u32)
        })
    }

    /// Raw words, for canonical ordering of carriers.
    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    fn trim(&mut self) {
        let extra = self.bits.len() * 64 - self.len;
        if extra > 0 {
            let last = self.bits.len() - 1;
            self.bits[last] &= !0 >> extra;
        }
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let mut a = ElementSet::empty(70);
        a.insert(0);
        a.insert(69);
        let mut b = ElementSet::singleton(70, 69);
        assert!(a.contains(69));
        assert_eq!(a.count(), 2);
        b.union_with(&a);
        assert_eq!(b.count(), 2);
        a.intersect_with(&ElementSet::singleton(70, 0));
        assert!(a.is_trivial());
        assert_eq!(ElementSet::full(70).count(), 70);
        assert_eq!(ElementSet::empty(70).complement().count(), 70);
    }

    #[test]
    fn iter_and_min() {
        let mut s = ElementSet::empty(130);
        for e in [5u32, 64, 129] {
            s.insert(e);
        }
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![5, 64, 129]);
        assert_eq!(s.min(), Some(5));
        s.remove(5);
        assert_eq!(s.min(), Some(64));
    }
}
