//! Strictly increasing multi-indices, stored as bit sets.

use std::fmt;

/// A strictly increasing multi-index `i_1 < ... < i_k` (0-based), stored as a
/// bit set. At most 32 slots are supported.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(u32);

pub const MAX_SLOTS: usize = 32;

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    /// Sorts `indices` into an increasing multi-index, returning the sign of
    /// the sorting permutation, or `None` if an index repeats.
    pub fn sorted(indices: &[usize]) -> Option<(bool, IndexSet)> {
        let mut set = IndexSet::EMPTY;
        let mut negative = false;
        for &i in indices {
            if set.contains(i) {
                return None;
            }
            // moving i leftwards past every larger element already present
            negative ^= set.count_above(i) % 2 == 1;
            set = set.insert(i);
        }
        Some((negative, set))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        IndexSet(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of elements strictly below `i`; equals the 0-based position of
    /// `i` when it is a member.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    pub fn count_above(self, i: usize) -> usize {
        if i + 1 >= MAX_SLOTS {
            return 0;
        }
        (self.0 >> (i + 1)).count_ones() as usize
    }

    /// Largest index + 1, or 0 for the empty set.
    pub fn span(self) -> usize {
        MAX_SLOTS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_SLOTS).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sign of `dx^self ∧ dx^other = ± dx^(self ∪ other)`; `None` when they
    /// overlap. `true` means negative.
    pub fn wedge_sign(self, other: IndexSet) -> Option<bool> {
        if !self.is_disjoint(other) {
            return None;
        }
        let swaps: usize = other.iter().map(|b| self.count_above(b)).sum();
        Some(swaps % 2 == 1)
    }

    /// All `k`-subsets of `{0, .., n-1}` in increasing bit order.
    pub fn subsets(n: usize, k: usize) -> Vec<IndexSet> {
        assert!(n <= MAX_SLOTS);
        if k > n {
            return Vec::new();
        }
        let limit: u64 = 1u64 << n;
        (0..limit)
            .filter(|b| b.count_ones() as usize == k)
            .map(|b| IndexSet(b as u32))
            .collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        assert_eq!(IndexSet::sorted(&[0, 1]), Some((false, IndexSet(0b11))));
        assert_eq!(IndexSet::sorted(&[1, 0]), Some((true, IndexSet(0b11))));
        assert_eq!(IndexSet::sorted(&[2, 0, 1]), Some((false, IndexSet(0b111))));
        assert_eq!(IndexSet::sorted(&[1, 1]), None);
    }

    #[test]
    fn wedge_sign_matches_sorting() {
        for a in 0..16u32 {
            for b in 0..16u32 {
                let (sa, sb) = (IndexSet(a), IndexSet(b));
                let concat: Vec<usize> = sa.iter().chain(sb.iter()).collect();
                let expected = IndexSet::sorted(&concat).map(|(s, _)| s);
                assert_eq!(sa.wedge_sign(sb), expected);
            }
        }
    }

    #[test]
    fn subsets_count() {
        assert_eq!(IndexSet::subsets(4, 2).len(), 6);
        assert_eq!(IndexSet::subsets(3, 4).len(), 0);
        assert_eq!(IndexSet::subsets(3, 0), vec![IndexSet::EMPTY]);
    }
}
