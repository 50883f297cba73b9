//! Vertex subsets bound to a fixed universe `{0, …, n−1}`.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A subset of the vertices of an `n`-vertex graph.
///
/// The cardinality is cached so `len` is O(1); all mutators keep it in sync.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
    len: usize,
}

/// JSON shape `{"set":[ids]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDocument {
    pub set: Vec<usize>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits, len: n }
    }

    pub fn from_vertices<I>(n: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Builds the set whose members are the one bits of `mask`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "bitmask sets cover at most 64 vertices");
        debug_assert!(n == 64 || mask >> n == 0);
        let mut set = Self::empty(n);
        let mut rest = mask;
        while rest != 0 {
            set.insert(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        set
    }

    /// The members as a bitmask, when the universe fits in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        if self.universe() > 64 {
            return None;
        }
        Some(self.iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    /// Size of the universe this set is bound to.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.bits.len() && self.bits.contains(v)
    }

    /// Inserts `v`, returning whether it was newly added. Panics when out of range.
    pub fn insert(&mut self, v: usize) -> bool {
        let was = self.bits.put(v);
        if !was {
            self.len += 1;
        }
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if self.contains(v) {
            self.bits.set(v, false);
            self.len -= 1;
            true
        } else {
            false
        }
    }

    /// Flips membership of `v`.
    pub fn toggle(&mut self, v: usize) {
        if !self.remove(v) {
            self.insert(v);
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self {
            bits,
            len: self.universe() - self.len,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.universe() == other.universe() && self.bits.is_subset(&other.bits)
    }

    /// `self ⊊ other`.
    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self.len < other.len
    }

    /// `d_S(v)`: neighbours of `v` inside this set.
    pub fn degree_into(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v).iter().filter(|&&w| self.contains(w)).count()
    }

    pub fn to_document(&self) -> SetDocument {
        SetDocument { set: self.to_vec() }
    }

    pub fn from_document(n: usize, doc: &SetDocument) -> Result<Self> {
        Self::from_vertices(n, doc.set.iter().copied())
    }

    pub(crate) fn ensure_universe(&self, g: &Graph) -> Result<()> {
        if self.universe() != g.n() {
            return Err(Error::UniverseMismatch {
                set_n: self.universe(),
                graph_n: g.n(),
            });
        }
        Ok(())
    }

    fn from_bits(bits: FixedBitSet) -> Self {
        let len = bits.count_ones(..);
        Self { bits, len }
    }
}

/// Serialises as `{"set":[ids]}`.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(serializer)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet(n={}, ", self.universe())?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}
