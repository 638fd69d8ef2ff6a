//! The hedgegraph data model.
//!
//! A hedgegraph is a vertex set plus an ordered list of hedges; each hedge is
//! a nonempty collection of pairwise vertex-disjoint hyperedges. Hyperedges of
//! one hedge that share a vertex are merged on construction, which leaves
//! every cut and partition quantity unchanged.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::dsu::DisjointSet;
use crate::hedgeset::HedgeSet;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HedgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for HedgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A nonempty sorted set of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Hyperedge {
    vertices: Vec<VertexId>,
}

impl Hyperedge {
    /// Sorts and deduplicates; `None` if `vertices` is empty.
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Option<Self> {
        let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return None;
        }
        vertices.sort_unstable();
        vertices.dedup();
        Some(Self { vertices })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(vertices: I) -> Option<Self> {
        Self::new(vertices.into_iter().map(VertexId))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn min_vertex(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub(crate) fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().map(|v| v.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hedge {
    pub name: String,
    hyperedges: Vec<Hyperedge>,
    #[serde(serialize_with = "serialize_weight")]
    pub weight: Rational,
}

fn serialize_weight<S: serde::Serializer>(w: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format_decimal(w))
}

impl Hedge {
    /// Builds a normalized hedge. Panics on an empty hyperedge list or a negative weight;
    /// the parser reports those as errors before reaching here.
    pub fn new(name: impl Into<String>, hyperedges: Vec<Hyperedge>, weight: Rational) -> Self {
        assert!(!hyperedges.is_empty(), "a hedge needs at least one hyperedge");
        assert!(!weight.is_negative(), "hedge weights are nonnegative");
        let mut hedge = Self {
            name: name.into(),
            hyperedges,
            weight,
        };
        hedge.hyperedges = normalize_hyperedges(&hedge.hyperedges);
        hedge
    }

    pub fn unit(name: impl Into<String>, hyperedges: Vec<Hyperedge>) -> Self {
        Self::new(name, hyperedges, Rational::one())
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    /// `Σ_{h∈e} |h|`.
    pub fn size(&self) -> usize {
        self.hyperedges.iter().map(Hyperedge::len).sum()
    }

    /// True when no hyperedge has two vertices, so the hedge never crosses anything.
    pub fn is_trivial(&self) -> bool {
        self.hyperedges.iter().all(|h| h.len() < 2)
    }
}

/// Merges intersecting hyperedges until they are pairwise disjoint.
///
/// The output is sorted by minimum vertex, which makes the operation idempotent
/// and independent of input order.
pub fn normalize_hedge(hedge: &Hedge) -> Hedge {
    Hedge {
        name: hedge.name.clone(),
        hyperedges: normalize_hyperedges(&hedge.hyperedges),
        weight: hedge.weight,
    }
}

fn normalize_hyperedges(hyperedges: &[Hyperedge]) -> Vec<Hyperedge> {
    // Dense relabelling keeps the union-find small for sparse vertex ids.
    let mut local: HashMap<VertexId, usize> = HashMap::new();
    let mut vertices = Vec::new();
    for h in hyperedges {
        for &v in h.vertices() {
            local.entry(v).or_insert_with(|| {
                vertices.push(v);
                vertices.len() - 1
            });
        }
    }
    let mut dsu = DisjointSet::new(vertices.len());
    for h in hyperedges {
        let ids: Vec<usize> = h.vertices().iter().map(|v| local[v]).collect();
        dsu.union_all(&ids);
    }
    let mut groups: HashMap<usize, Vec<VertexId>> = HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        groups.entry(dsu.find(i)).or_default().push(v);
    }
    let mut merged: Vec<Hyperedge> = groups
        .into_values()
        .filter_map(Hyperedge::new)
        .collect();
    merged.sort_by_key(Hyperedge::min_vertex);
    merged
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate hedge name `{0}`")]
    DuplicateHedge(String),
    #[error("hedge `{hedge}` references vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange { hedge: String, vertex: usize, n: usize },
    #[error("hedge set has capacity {got} but the graph has {expected} hedges")]
    HedgeSetCapacity { expected: usize, got: usize },
    #[error("unknown hedge id {0}")]
    UnknownHedge(usize),
    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// A validated, normalized hedgegraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hedgegraph {
    vertex_names: Vec<String>,
    hedges: Vec<Hedge>,
    size: usize,
}

impl Hedgegraph {
    pub fn new(vertex_names: Vec<String>, hedges: Vec<Hedge>) -> Result<Self, GraphError> {
        let n = vertex_names.len();
        let mut seen = HashMap::new();
        for name in &vertex_names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut hedge_names = HashMap::new();
        for hedge in &hedges {
            if hedge_names.insert(hedge.name.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateHedge(hedge.name.clone()));
            }
            for h in hedge.hyperedges() {
                if let Some(v) = h.vertices().iter().find(|v| v.0 >= n) {
                    return Err(GraphError::VertexOutOfRange {
                        hedge: hedge.name.clone(),
                        vertex: v.0,
                        n,
                    });
                }
            }
        }
        let size = hedges.iter().map(Hedge::size).sum();
        Ok(Self {
            vertex_names,
            hedges,
            size,
        })
    }

    /// Unit-weight hedgegraph on vertices named `0..n`, hedges named `e0, e1, …`.
    pub fn from_index_hedges(n: usize, hedges: Vec<Vec<Vec<usize>>>) -> Result<Self, GraphError> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let hedges = hedges
            .into_iter()
            .enumerate()
            .map(|(i, hs)| {
                let hyperedges = hs.into_iter().filter_map(Hyperedge::from_indices).collect();
                Hedge::unit(format!("e{i}"), hyperedges)
            })
            .collect();
        Self::new(names, hedges)
    }

    /// Same graph with every hedge weight replaced.
    pub fn with_weights(&self, weights: &[Rational]) -> Self {
        assert_eq!(weights.len(), self.hedges.len());
        let mut g = self.clone();
        for (h, w) in g.hedges.iter_mut().zip(weights) {
            assert!(!w.is_negative());
            h.weight = *w;
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn hedge_count(&self) -> usize {
        self.hedges.len()
    }

    pub fn hedges(&self) -> &[Hedge] {
        &self.hedges
    }

    pub fn hedge(&self, id: HedgeId) -> &Hedge {
        &self.hedges[id.0]
    }

    pub fn hedge_ids(&self) -> impl Iterator<Item = HedgeId> {
        (0..self.hedges.len()).map(HedgeId)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn hedge_by_name(&self, name: &str) -> Option<HedgeId> {
        self.hedges.iter().position(|h| h.name == name).map(HedgeId)
    }

    /// Representation size `p = Σ_e Σ_{h∈e} |h|`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.hedges.iter().map(|h| h.weight).collect()
    }

    pub fn all_hedges(&self) -> HedgeSet {
        HedgeSet::full(self.hedges.len())
    }

    pub fn no_hedges(&self) -> HedgeSet {
        HedgeSet::empty(self.hedges.len())
    }

    pub(crate) fn check_set(&self, set: &HedgeSet) -> Result<(), GraphError> {
        if set.capacity() != self.hedges.len() {
            return Err(GraphError::HedgeSetCapacity {
                expected: self.hedges.len(),
                got: set.capacity(),
            });
        }
        Ok(())
    }

    /// Graph whose hedges are exactly the given ones (vertex set unchanged), in id order.
    pub fn subgraph(&self, set: &HedgeSet) -> Result<Self, GraphError> {
        self.check_set(set)?;
        let hedges = set.iter().map(|id| self.hedges[id.0].clone()).collect();
        Self::new(self.vertex_names.clone(), hedges)
    }
}
