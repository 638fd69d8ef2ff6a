//! Vertex partitions in canonical form.
//!
//! A partition is stored as a restricted growth string: `labels[v]` is the
//! block of vertex `v`, blocks are numbered in order of their minimum vertex,
//! so two partitions are equal exactly when their label vectors are.

use serde::Serialize;

use crate::graph::{GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling (any `usize` per vertex).
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &l in raw {
            let next = map.len();
            labels.push(*map.entry(l).or_insert(next));
        }
        Self {
            blocks: map.len(),
            labels,
        }
    }

    /// Validates that `blocks` are nonempty, disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<VertexId>]) -> Result<Self, GraphError> {
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(GraphError::InvalidPartition(format!("block {b} is empty")));
            }
            for v in block {
                if v.0 >= n {
                    return Err(GraphError::InvalidPartition(format!("vertex {} out of range", v.0)));
                }
                if raw[v.0] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!("vertex {} in two blocks", v.0)));
                }
                raw[v.0] = b;
            }
        }
        if let Some(v) = raw.iter().position(|&l| l == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(Self::from_labels(&raw))
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    /// The two-block partition `{S, V∖S}` given membership flags.
    pub fn bipartition(in_s: &[bool]) -> Self {
        let raw: Vec<usize> = in_s.iter().map(|&b| usize::from(b)).collect();
        Self::from_labels(&raw)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, v: VertexId) -> usize {
        self.labels[v.0]
    }

    pub fn blocks(&self) -> Vec<Vec<VertexId>> {
        let mut blocks = vec![Vec::new(); self.blocks];
        for (v, &l) in self.labels.iter().enumerate() {
            blocks[l].push(VertexId(v));
        }
        blocks
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.labels.len() != coarser.labels.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.blocks];
        for (v, &l) in self.labels.iter().enumerate() {
            let c = coarser.labels[v];
            if image[l] == usize::MAX {
                image[l] = c;
            } else if image[l] != c {
                return false;
            }
        }
        true
    }

    /// All partitions of `0..n` in lexicographic order of their label vectors.
    pub fn enumerate(n: usize) -> PartitionIter {
        PartitionIter::new(n)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let blocks: Vec<Vec<usize>> = self
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|v| v.0).collect())
            .collect();
        blocks.serialize(serializer)
    }
}

/// Restricted-growth-string enumerator; yields Bell(n) partitions.
pub struct PartitionIter {
    labels: Vec<usize>,
    // prefix_max[i] = max(labels[0..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIter {
    fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        // Find the rightmost position that can still grow.
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        let blocks = if self.labels.is_empty() {
            0
        } else {
            self.prefix_max[self.labels.len() - 1] + 1
        };
        Some(Partition {
            labels: self.labels.clone(),
            blocks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(Partition::enumerate(n).count(), b, "Bell({n})");
        }
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let all: Vec<Partition> = Partition::enumerate(5).collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
        for p in &all {
            assert_eq!(&Partition::from_labels(p.labels()), p);
        }
    }

    #[test]
    fn canonical_form_sorts_blocks_by_minimum() {
        let p = Partition::from_labels(&[7, 3, 7, 9]);
        assert_eq!(p.labels(), &[0, 1, 0, 2]);
        assert_eq!(p.blocks(), vec![vec![VertexId(0), VertexId(2)], vec![VertexId(1)], vec![VertexId(3)]]);
    }

    #[test]
    fn block_validation() {
        let ok = Partition::from_blocks(3, &[vec![VertexId(2)], vec![VertexId(0), VertexId(1)]]).unwrap();
        assert_eq!(ok.labels(), &[0, 0, 1]);
        assert!(Partition::from_blocks(3, &[vec![VertexId(0)], vec![VertexId(0), VertexId(1), VertexId(2)]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![VertexId(0)]]).is_err());
        assert!(Partition::from_blocks(2, &[vec![VertexId(0), VertexId(1)], vec![]]).is_err());
    }

    #[test]
    fn refinement() {
        let fine = Partition::from_labels(&[0, 1, 2, 2]);
        let coarse = Partition::from_labels(&[0, 0, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::singletons(4).refines(&fine));
        assert!(fine.refines(&Partition::whole(4)));
    }
}
