//! Subsets of a finite carrier `0..n`, stored as bitsets.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    /// Panics if any index is `>= n`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// The subset whose members are the set bits of `mask`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        Self::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
    }

    /// Universe size `n`.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe(), "element {i} outside carrier of size {}", self.universe());
        self.bits.insert(i);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// First element of `self` not in `other`.
    pub fn first_outside(&self, other: &ElementSet) -> Option<usize> {
        self.bits.difference(&other.bits).next()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    /// Image of the set under an index map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> ElementSet {
        Self::from_indices(self.universe(), self.iter().map(f))
    }

    /// The members as a bit mask; requires `n <= 64`.
    pub fn mask(&self) -> u64 {
        assert!(self.universe() <= 64);
        self.iter().fold(0, |m, i| m | 1 << i)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Comma-separated ascending indices, e.g. `0,2`. The empty set prints as
/// the empty string.
impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubsetLiteralError {
    #[error("invalid subset entry {0:?}: expected a non-negative integer")]
    BadEntry(String),
    #[error("subset entry {value} is out of range for a carrier of size {n}")]
    OutOfRange { value: usize, n: usize },
}

/// A parsed subset literal, not yet tied to a carrier size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetLiteral(pub Vec<usize>);

impl FromStr for SubsetLiteral {
    type Err = SubsetLiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SubsetLiteral(Vec::new()));
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| SubsetLiteralError::BadEntry(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SubsetLiteral)
    }
}

impl SubsetLiteral {
    pub fn into_set(self, n: usize) -> Result<ElementSet, SubsetLiteralError> {
        if let Some(&value) = self.0.iter().find(|&&v| v >= n) {
            return Err(SubsetLiteralError::OutOfRange { value, n });
        }
        Ok(ElementSet::from_indices(n, self.0))
    }
}
