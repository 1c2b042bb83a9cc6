use std::fmt;

/// A subset of a ground set of at most 64 indexed elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSet(pub u64);

impl BitSet {
    pub const EMPTY: BitSet = BitSet(0);
    pub const CAPACITY: usize = 64;

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        if n == 64 {
            BitSet(u64::MAX)
        } else {
            BitSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        BitSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(BitSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        BitSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        BitSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Self) -> Self {
        BitSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        BitSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        BitSet(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: Self) -> Self {
        BitSet(self.0 ^ o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, the empty set first.
    pub fn subsets(self) -> impl Iterator<Item = BitSet> {
        let full = self.0;
        let mut cur = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = BitSet(cur);
            if cur == full {
                done = true;
            } else {
                cur = (cur.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }

    /// Subsets of `self` with exactly `k` elements, in increasing mask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = BitSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        BitSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_powerset() {
        let s = BitSet::from_indices([1, 3, 4]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(BitSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn iter_round_trip() {
        let s = BitSet::from_indices([0, 5, 63]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 63]);
        assert_eq!(s.len(), 3);
        assert_eq!(BitSet::full(64).len(), 64);
    }
}
