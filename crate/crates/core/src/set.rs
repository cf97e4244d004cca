//! Compact sets of vertex ids over a fixed universe `[0, M)`.
//!
//! Backs every vertex set the algorithms manipulate (`A`, `S`, `I`, `T`,
//! `T'`, containers). Bits above the universe are kept zero so that `Eq`
//! and `Hash` are structural.

/// A set of vertex ids drawn from `[0, universe)`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    universe: u32,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: u32) -> Self {
        let words = (universe as usize).div_ceil(64);
        VertexSet {
            universe,
            blocks: vec![0; words],
        }
    }

    pub fn full(universe: u32) -> Self {
        let mut s = Self::empty(universe);
        for w in s.blocks.iter_mut() {
            *w = !0;
        }
        s.mask_tail();
        s
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(universe: u32, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for v in ids {
            s.insert(v);
        }
        s
    }

    fn mask_tail(&mut self) {
        let rem = self.universe as usize % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.universe && self.blocks[v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// Inserts `v`. Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: u32) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.blocks[v as usize / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        if v < self.universe {
            self.blocks[v as usize / 64] &= !(1u64 << (v % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&w| w == 0)
    }

    fn check_same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "vertex sets over different universes"
        );
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let mut out = self.clone();
        for (w, o) in out.blocks.iter_mut().zip(&other.blocks) {
            *w |= o;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let mut out = self.clone();
        for (w, o) in out.blocks.iter_mut().zip(&other.blocks) {
            *w &= o;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        let mut out = self.clone();
        for (w, o) in out.blocks.iter_mut().zip(&other.blocks) {
            *w &= !o;
        }
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(w, o)| w & !o == 0)
    }

    /// Iterates members in ascending id order (the canonical order).
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as u32 * 64 + b)
                }
            })
        })
    }

    pub fn to_sorted_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = VertexSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        assert_eq!(s.to_sorted_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn full_and_setops() {
        let f = VertexSet::full(70);
        assert_eq!(f.len(), 70);
        let a = VertexSet::from_ids(70, [1, 2, 3]);
        let b = VertexSet::from_ids(70, [3, 4]);
        assert_eq!(a.union(&b).to_sorted_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_sorted_vec(), vec![3]);
        assert_eq!(a.difference(&b).to_sorted_vec(), vec![1, 2]);
        assert!(a.is_subset_of(&f));
        assert!(!f.is_subset_of(&a));
    }

    #[test]
    fn full_equals_inserting_everything() {
        let mut s = VertexSet::empty(65);
        for v in 0..65 {
            s.insert(v);
        }
        assert_eq!(s, VertexSet::full(65));
    }
}
