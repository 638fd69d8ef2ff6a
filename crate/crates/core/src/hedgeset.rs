//! Bit sets over a hedgegraph's hedges.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::HedgeId;

/// A subset of the hedges `0..capacity` of one hedgegraph.
///
/// Also used as the generic element-set type of the submodular minimization
/// engine, whose ground sets are always index ranges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HedgeSet {
    bits: FixedBitSet,
}

impl HedgeSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_ids<I: IntoIterator<Item = HedgeId>>(capacity: usize, ids: I) -> Self {
        let mut set = Self::empty(capacity);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, ids: I) -> Self {
        Self::from_ids(capacity, ids.into_iter().map(HedgeId))
    }

    /// Builds the set whose members are the set bits of `mask` (`capacity ≤ 64`).
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        debug_assert!(capacity <= 64);
        Self::from_indices(capacity, (0..capacity).filter(|&i| mask >> i & 1 == 1))
    }

    /// Inverse of [`HedgeSet::from_mask`]; `None` if the set has a member ≥ 64.
    pub fn to_mask(&self) -> Option<u64> {
        let mut mask = 0u64;
        for i in self.bits.ones() {
            if i >= 64 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(mask)
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, id: HedgeId) -> bool {
        self.bits.contains(id.0)
    }

    /// Panics if `id` is outside the capacity.
    pub fn insert(&mut self, id: HedgeId) {
        assert!(id.0 < self.capacity(), "hedge {} outside set capacity {}", id.0, self.capacity());
        self.bits.insert(id.0);
    }

    pub fn remove(&mut self, id: HedgeId) {
        if id.0 < self.capacity() {
            self.bits.set(id.0, false);
        }
    }

    pub fn with(&self, id: HedgeId) -> Self {
        let mut s = self.clone();
        s.insert(id);
        s
    }

    pub fn without(&self, id: HedgeId) -> Self {
        let mut s = self.clone();
        s.remove(id);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = HedgeId> + '_ {
        self.bits.ones().map(HedgeId)
    }

    pub fn ids(&self) -> Vec<HedgeId> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }

    /// Complement within `0..capacity`.
    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for HedgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl serde::Serialize for HedgeSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.bits.ones())
    }
}
