//! Connectivity measures for hedgegraphs.
//!
//! A hedgegraph is a vertex set with a list of hedges, where a hedge is a set
//! of vertex-disjoint hyperedges that is kept or removed as a unit. The crate
//! provides the hedgegraph polymatroid, exact brute-force oracles, submodular
//! minimization, the trimming matroid with packing, covering and orientation
//! constructions, and randomized sampling and sparsification.

mod dsu;

pub mod fixtures;
pub mod format;
pub mod generate;
pub mod graph;
pub mod hedgeset;
pub mod matroid;
pub mod measures;
pub mod oracle;
pub mod orientation;
pub mod partition;
pub mod polymatroid;
pub mod rational;
pub mod sfm;
pub mod stochastic;
pub mod strength;

pub use format::{parse_hedgegraph, serialize_hedgegraph, ParseError};
pub use graph::{normalize_hedge, GraphError, Hedge, HedgeId, Hedgegraph, Hyperedge, VertexId};
pub use hedgeset::HedgeSet;
pub use partition::Partition;
pub use polymatroid::{
    components, cut_hedges, cut_value, internal_hedges, is_closed, partition_boundary, polymatroid_f, span, wpc_term,
};
pub use rational::{ExtRational, Rational};
