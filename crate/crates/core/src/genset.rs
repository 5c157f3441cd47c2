//! Subsets of a generator index set, packed into a single machine word.

use std::fmt;

/// Largest generator count representable by [`GenSet`].
pub const MAX_GENERATORS: usize = 64;

/// A set of generator indices `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_GENERATORS);
        GenSet(1 << i)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GENERATORS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(self, i: usize) -> Self {
        GenSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        GenSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: Self) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Maps each member `i` to `perm[i]`.
    pub fn permute(self, perm: &[usize]) -> Self {
        self.iter().fold(GenSet::EMPTY, |acc, i| acc.with(perm[i]))
    }

    /// Sorted 1-based indices, the interchange representation.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(GenSet::EMPTY, |acc, i| acc.with(i))
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Formats as a 1-based set literal, e.g. `{1,3}`.
impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: GenSet = [0, 2, 5].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(2) && !a.contains(1));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(a.without(2).with(1).to_one_based(), vec![1, 2, 6]);
        assert!(GenSet::singleton(5).is_subset(a));
        assert_eq!(GenSet::full(3).bits(), 7);
        assert_eq!(GenSet::full(64).len(), 64);
        assert_eq!(format!("{a}"), "{1,3,6}");
    }

    #[test]
    fn permute_relabels() {
        let a: GenSet = [0, 1].into_iter().collect();
        assert_eq!(a.permute(&[2, 0, 1]), [2, 0].into_iter().collect());
    }
}
