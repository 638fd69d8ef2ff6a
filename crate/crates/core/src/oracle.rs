//! Exhaustive reference computations.
//!
//! Every function here enumerates subsets, cuts or partitions outright and
//! refuses inputs above [`OracleLimits`]. Ties resolve to the first witness in
//! enumeration order, so results are deterministic.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::graph::{GraphError, Hedgegraph, VertexId};
use crate::hedgeset::HedgeSet;
use crate::partition::Partition;
use crate::polymatroid::{boundary_unchecked, crosses_labels, f_table, span_unchecked, wpc_term_unchecked};
use crate::rational::{ExtRational, Rational};

pub const MAX_VERTICES_ENV: &str = "HEDGE_ORACLE_MAX_VERTICES";
pub const MAX_HEDGES_ENV: &str = "HEDGE_ORACLE_MAX_HEDGES";

/// Hard caps: `2^m` for subset sweeps, `2^n` and Bell(n) for cut and partition sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_hedges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 12,
            max_hedges: 20,
        }
    }
}

impl OracleLimits {
    /// Defaults overridden by the environment variables, when set and numeric.
    /// Hedge limits are capped at 30 because subset tables are indexed by `u32` masks.
    pub fn from_env() -> Self {
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<usize>().ok());
        let d = Self::default();
        Self {
            max_vertices: read(MAX_VERTICES_ENV).unwrap_or(d.max_vertices).min(255),
            max_hedges: read(MAX_HEDGES_ENV).unwrap_or(d.max_hedges).min(30),
        }
    }

    pub fn check_vertices(&self, g: &Hedgegraph) -> Result<(), OracleError> {
        if g.vertex_count() > self.max_vertices {
            return Err(OracleError::TooManyVertices {
                n: g.vertex_count(),
                limit: self.max_vertices,
            });
        }
        Ok(())
    }

    pub fn check_hedges(&self, m: usize) -> Result<(), OracleError> {
        if m > self.max_hedges.min(30) {
            return Err(OracleError::TooManyHedges {
                m,
                limit: self.max_hedges.min(30),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the exhaustive limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("{m} hedges exceeds the exhaustive limit of {limit}")]
    TooManyHedges { m: usize, limit: usize },
    #[error("needs at least 2 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn need_two(g: &Hedgegraph) -> Result<(), OracleError> {
    if g.vertex_count() < 2 {
        return Err(OracleError::TooFewVertices { n: g.vertex_count() });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: usize,
    /// The minimizing side; always contains vertex 0.
    pub side: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    pub value: usize,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetRatio {
    /// Exact minimum ratio; `Infinite` when every set is skipped.
    pub ratio: ExtRational,
    pub argmin: HedgeSet,
}

impl SubsetRatio {
    /// Floor of the ratio, `None` for `+∞`.
    pub fn floor(&self) -> Option<u64> {
        self.ratio.floor().map(|v| v as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub value: usize,
    pub argmin: HedgeSet,
}

/// `λ = min d(S)` over proper nonempty `S ∋ v0`, counting hedges.
pub fn exact_connectivity(g: &Hedgegraph, limits: &OracleLimits) -> Result<CutResult, OracleError> {
    need_two(g)?;
    limits.check_vertices(g)?;
    let n = g.vertex_count();
    let mut best: Option<CutResult> = None;
    let full = (1u64 << (n - 1)) - 1;
    let mut labels = vec![0usize; n];
    for rest in 0..full {
        for (v, label) in labels.iter_mut().enumerate().skip(1) {
            *label = usize::from(rest >> (v - 1) & 1 == 0);
        }
        let d = g.hedge_ids().filter(|&e| crosses_labels(g, e, &labels)).count();
        if best.as_ref().is_none_or(|b| d < b.value) {
            let side = (0..n).filter(|&v| labels[v] == 0).map(VertexId).collect();
            best = Some(CutResult { value: d, side });
        }
    }
    Ok(best.expect("n ≥ 2 gives at least one cut"))
}

fn min_over_partitions<F>(g: &Hedgegraph, limits: &OracleLimits, mut value: F) -> Result<PartitionResult, OracleError>
where
    F: FnMut(&Partition) -> usize,
{
    need_two(g)?;
    limits.check_vertices(g)?;
    let mut best: Option<PartitionResult> = None;
    for p in Partition::enumerate(g.vertex_count()) {
        if p.block_count() < 2 {
            continue;
        }
        let v = value(&p);
        if best.as_ref().is_none_or(|b| v < b.value) {
            let stop = v == 0;
            best = Some(PartitionResult { value: v, partition: p });
            if stop {
                break;
            }
        }
    }
    Ok(best.expect("n ≥ 2 gives a partition with two blocks"))
}

/// `PC = min ⌊|δ(𝒫)| / (|𝒫| − 1)⌋` over partitions with at least two blocks.
pub fn exact_pc(g: &Hedgegraph, limits: &OracleLimits) -> Result<PartitionResult, OracleError> {
    min_over_partitions(g, limits, |p| boundary_unchecked(g, p.labels()).len() / (p.block_count() - 1))
}

/// `WPC = min ⌊Σ_e (|𝒫| − #Comps(𝒫(e))) / (|𝒫| − 1)⌋`.
pub fn exact_wpc(g: &Hedgegraph, limits: &OracleLimits) -> Result<PartitionResult, OracleError> {
    min_over_partitions(g, limits, |p| {
        let total: usize = g
            .hedge_ids()
            .map(|e| wpc_term_unchecked(g, p.labels(), p.block_count(), e))
            .sum();
        total / (p.block_count() - 1)
    })
}

fn min_subset_ratio<F>(g: &Hedgegraph, limits: &OracleLimits, mut numerator: F) -> Result<SubsetRatio, OracleError>
where
    F: FnMut(u32, &[u8]) -> Rational,
{
    let m = g.hedge_count();
    limits.check_hedges(m)?;
    let table = f_table(g);
    let full = (1u32 << m) - 1;
    let f_full = table[full as usize];
    let mut best: Option<(Rational, u32)> = None;
    for mask in 0..=full {
        let fa = table[mask as usize];
        if fa == f_full {
            continue;
        }
        let r = numerator(mask, &table) / Rational::from(i128::from(f_full - fa));
        if best.is_none_or(|(b, _)| r < b) {
            best = Some((r, mask));
        }
    }
    Ok(match best {
        Some((r, mask)) => SubsetRatio {
            ratio: ExtRational::Finite(r),
            argmin: HedgeSet::from_mask(m, u64::from(mask)),
        },
        None => SubsetRatio {
            ratio: ExtRational::Infinite,
            argmin: HedgeSet::empty(m),
        },
    })
}

/// Functional strength: min over `A` with `f(A) < f(E)` of `Σ_e (f(A+e) − f(A)) / (f(E) − f(A))`.
///
/// The returned ratio is unfloored; `k* = ⌊ratio⌋`.
pub fn exact_kstar(g: &Hedgegraph, limits: &OracleLimits) -> Result<SubsetRatio, OracleError> {
    let m = g.hedge_count();
    min_subset_ratio(g, limits, |mask, table| {
        let fa = table[mask as usize];
        let total: u32 = (0..m).map(|e| u32::from(table[(mask | 1 << e) as usize] - fa)).sum();
        Rational::from(i128::from(total))
    })
}

/// `κ_w = min (w(E) − w(A)) / (f(E) − f(A))` over `A` with `f(A) < f(E)`.
pub fn exact_kappa(g: &Hedgegraph, weights: &[Rational], limits: &OracleLimits) -> Result<SubsetRatio, OracleError> {
    assert_eq!(weights.len(), g.hedge_count());
    let m = g.hedge_count();
    min_subset_ratio(g, limits, |mask, _| {
        (0..m)
            .filter(|&e| mask >> e & 1 == 0)
            .map(|e| weights[e])
            .fold(Rational::zero(), |acc, w| acc + w)
    })
}

/// `r(A) = min_{B⊆A} f(B) + |A ∖ B|`.
pub fn exact_rank(g: &Hedgegraph, a: &HedgeSet, limits: &OracleLimits) -> Result<RankResult, OracleError> {
    g.check_set(a)?;
    limits.check_hedges(a.len())?;
    let ids = a.ids();
    let sub = g.subgraph(a)?;
    let table = f_table(&sub);
    let k = ids.len();
    let mut best = (usize::MAX, 0u32);
    for mask in 0..(1u32 << k) {
        let v = usize::from(table[mask as usize]) + k - mask.count_ones() as usize;
        if v < best.0 {
            best = (v, mask);
        }
    }
    let argmin = HedgeSet::from_ids(
        g.hedge_count(),
        (0..k).filter(|&i| best.1 >> i & 1 == 1).map(|i| ids[i]),
    );
    Ok(RankResult { value: best.0, argmin })
}

/// `{δ(𝒫)}` over every partition of `V`, deduplicated.
pub fn enumerate_quotients(g: &Hedgegraph, limits: &OracleLimits) -> Result<BTreeSet<HedgeSet>, OracleError> {
    limits.check_vertices(g)?;
    Ok(Partition::enumerate(g.vertex_count())
        .map(|p| boundary_unchecked(g, p.labels()))
        .collect())
}

/// `{E ∖ span(S) : S ⊆ E}`, straight from the definition of a quotient.
pub fn quotients_by_span(g: &Hedgegraph, limits: &OracleLimits) -> Result<BTreeSet<HedgeSet>, OracleError> {
    let m = g.hedge_count();
    limits.check_hedges(m)?;
    Ok((0..1u64 << m)
        .map(|mask| span_unchecked(g, &HedgeSet::from_mask(m, mask)).complement())
        .collect())
}

/// Weighted partition capacity `d_w(𝒫) = Σ_{e∈δ(𝒫)} w(e)`.
pub fn partition_capacity(g: &Hedgegraph, p: &Partition, weights: &[Rational]) -> Rational {
    boundary_unchecked(g, p.labels())
        .iter()
        .map(|e| weights[e.0])
        .fold(Rational::zero(), |acc, w| acc + w)
}
