//! Small fixed-width element sets.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest carrier a [`Mask`] can index.
pub const MAX_ELEMS: usize = 128;

/// A subset of `0..MAX_ELEMS` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct Mask(u128);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= MAX_ELEMS);
        if n == MAX_ELEMS {
            Mask(u128::MAX)
        } else {
            Mask((1u128 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Mask {
        debug_assert!(i < MAX_ELEMS);
        Mask(1u128 << i)
    }

    pub fn from_bits(bits: u128) -> Mask {
        Mask(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn with(self, i: usize) -> Mask {
        Mask(self.0 | 1u128 << i)
    }

    pub fn union(self, o: Mask) -> Mask {
        Mask(self.0 | o.0)
    }

    pub fn inter(self, o: Mask) -> Mask {
        Mask(self.0 & o.0)
    }

    pub fn minus(self, o: Mask) -> Mask {
        Mask(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Mask) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Highest index present, if any.
    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    /// Sorted element list, handy for lexicographic comparison.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Mask {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = Mask::EMPTY;
        for i in it {
            m.insert(i);
        }
        m
    }
}

impl From<Mask> for Vec<usize> {
    fn from(m: Mask) -> Self {
        m.to_vec()
    }
}

impl From<Vec<usize>> for Mask {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().filter(|&i| i < MAX_ELEMS).collect()
    }
}

pub struct MaskIter(u128);

impl Iterator for MaskIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}
