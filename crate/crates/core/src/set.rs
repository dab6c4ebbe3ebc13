use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of vertices of a graph on `universe` vertices, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::new(universe);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        Self::from_iter(universe, [v])
    }

    /// Size of the ground set, not the number of members.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Largest member plus one, i.e. the smallest universe that still fits.
    pub fn bound(&self) -> usize {
        self.bits.maximum().map_or(0, |m| m + 1)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the sorted member lists, which is what tie-breaking needs.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        let universe = items.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter(universe, items))
    }
}
