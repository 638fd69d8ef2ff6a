//! The hedgegraph matroid: hedge sets that can be trimmed to a forest.
//!
//! Trimming a hedge keeps one vertex pair from one of its hyperedges. A set
//! of hedges is independent when some trimming of it is acyclic, and its rank
//! is `min_{B⊆A} f(B) + |A ∖ B|`.

mod intersection;
mod union;

use serde::Serialize;

use crate::graph::{GraphError, HedgeId, Hedgegraph, VertexId};
use crate::hedgeset::HedgeSet;
use crate::partition::Partition;
use crate::polymatroid::components;

pub(crate) use intersection::Augmenter;
pub use union::{cover_acyclic_trimmable, min_cover_number, pack_bases, CoverOutcome, MinCover, PackingOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TrimElement {
    pub hedge: HedgeId,
    /// Index into the hedge's normalized hyperedge list.
    pub hyperedge: usize,
    /// `pair.0 < pair.1`, both inside the chosen hyperedge.
    pub pair: (VertexId, VertexId),
}

/// At most one trim element per hedge, sorted by hedge id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Trimming {
    elements: Vec<TrimElement>,
}

impl Trimming {
    /// Sorts by hedge; panics if a hedge appears twice.
    pub fn from_elements(mut elements: Vec<TrimElement>) -> Self {
        elements.sort();
        assert!(
            elements.windows(2).all(|w| w[0].hedge != w[1].hedge),
            "a trimming picks at most one pair per hedge"
        );
        Self { elements }
    }

    pub fn elements(&self) -> &[TrimElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, e: HedgeId) -> Option<&TrimElement> {
        self.elements
            .binary_search_by_key(&e, |t| t.hedge)
            .ok()
            .map(|i| &self.elements[i])
    }

    pub fn hedges(&self, capacity: usize) -> HedgeSet {
        HedgeSet::from_ids(capacity, self.elements.iter().map(|t| t.hedge))
    }

    /// Every element names an existing hedge, hyperedge and a pair inside it.
    pub fn is_valid_for(&self, g: &Hedgegraph) -> bool {
        self.elements.iter().all(|t| {
            t.hedge.0 < g.hedge_count()
                && g.hedge(t.hedge).hyperedges().get(t.hyperedge).is_some_and(|h| {
                    t.pair.0 < t.pair.1 && h.contains(t.pair.0) && h.contains(t.pair.1)
                })
        })
    }

    pub fn is_forest(&self, n: usize) -> bool {
        intersection::pairs_acyclic(n, self.elements.iter().map(|t| t.pair)).0
    }

    /// A forest with `n − 1` edges, hence connected.
    pub fn is_spanning_tree(&self, n: usize) -> bool {
        n >= 1 && self.elements.len() == n - 1 && self.is_forest(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    /// A forest trimming of exactly the tested hedges.
    Independent(Trimming),
    /// `B ⊆ A` with `|B| > f(B)`.
    Dependent(HedgeSet),
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent(_))
    }
}

pub fn is_independent(g: &Hedgegraph, a: &HedgeSet) -> Result<Independence, GraphError> {
    g.check_set(a)?;
    Ok(match Augmenter::from_set(g, a) {
        Ok(aug) => Independence::Independent(aug.trimming()),
        Err(b) => Independence::Dependent(b),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidRank {
    pub rank: usize,
    /// A maximal independent subset of `A`, chosen greedily in hedge order.
    pub basis: HedgeSet,
    pub witness: Trimming,
    /// `B ⊆ A` attaining `f(B) + |A ∖ B| = rank`.
    pub certificate: HedgeSet,
}

pub fn rank(g: &Hedgegraph, a: &HedgeSet) -> Result<MatroidRank, GraphError> {
    g.check_set(a)?;
    Ok(rank_unchecked(g, a))
}

pub(crate) fn rank_unchecked(g: &Hedgegraph, a: &HedgeSet) -> MatroidRank {
    let mut aug = Augmenter::new(g);
    for e in a.iter() {
        let _ = aug.try_add(e);
    }
    let certificate = aug.rank_certificate(a);
    MatroidRank {
        rank: aug.members().len(),
        basis: aug.member_set(),
        witness: aug.trimming(),
        certificate,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanningTree {
    Tree { hedges: HedgeSet, trimming: Trimming },
    /// `|δ(𝒫)| < |𝒫| − 1`.
    Certificate(Partition),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A hedge subset trimming to a spanning tree, or a partition showing none exists.
pub fn spanning_tree_trimming(g: &Hedgegraph) -> Result<SpanningTree, MatroidError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(MatroidError::TooFewVertices(n));
    }
    let r = rank_unchecked(g, &g.all_hedges());
    Ok(if r.rank == n - 1 {
        SpanningTree::Tree {
            hedges: r.basis,
            trimming: r.witness,
        }
    } else {
        SpanningTree::Certificate(components(g, &r.certificate)?)
    })
}
