//! Connectivity measures with witnesses.

use serde::Serialize;

use crate::graph::{HedgeId, Hedgegraph, VertexId};
use crate::hedgeset::HedgeSet;
use crate::matroid::{pack_bases, MatroidError, PackingOutcome};
use crate::oracle::{exact_kstar, exact_wpc, OracleError, OracleLimits};
use crate::partition::Partition;
use crate::polymatroid::{components, f_unchecked, prefix_ranks};
use crate::rational::{ExtRational, Rational};
use crate::strength::{min_ratio, StrengthError};

/// Constant in the greedy functional-strength band `[B, B·⌈c·ln f(E)⌉]`.
pub const KSTAR_LOG_CONSTANT: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureValue {
    Exact { value: u64 },
    Band { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Witness {
    Partition(Partition),
    Hedges(HedgeSet),
    Bases(Vec<HedgeSet>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub value: MeasureValue,
    pub witness: Witness,
    pub method: &'static str,
    /// Set when two independent algorithms computed the value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
    /// Unfloored ratio behind the value, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<ExtRational>,
    /// Exhaustive value reported alongside an approximation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<u64>,
}

impl MeasureReport {
    fn exact(value: u64, witness: Witness, method: &'static str) -> Self {
        Self {
            value: MeasureValue::Exact { value },
            witness,
            method,
            methods_agree: None,
            ratio: None,
            exact: None,
        }
    }

    /// The exact value, or `None` for a band.
    pub fn exact_value(&self) -> Option<u64> {
        match self.value {
            MeasureValue::Exact { value } => Some(value),
            MeasureValue::Band { .. } => None,
        }
    }

    pub fn band(&self) -> (u64, u64) {
        match self.value {
            MeasureValue::Exact { value } => (value, value),
            MeasureValue::Band { lo, hi } => (lo, hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MeasureError {
    #[error("needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("hedgegraph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Strength(#[from] StrengthError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn need_two(g: &Hedgegraph) -> Result<(), MeasureError> {
    if g.vertex_count() < 2 {
        return Err(MeasureError::TooFewVertices(g.vertex_count()));
    }
    Ok(())
}

pub fn is_connected(g: &Hedgegraph) -> bool {
    f_unchecked(g, &g.all_hedges()) + 1 == g.vertex_count().max(1)
}

fn component_partition(g: &Hedgegraph) -> Partition {
    components(g, &g.all_hedges()).expect("full set")
}

/// Largest `k` for which `k` spanning trimmings pack, searched upward from 1.
pub fn packing_number(g: &Hedgegraph) -> Result<u64, MeasureError> {
    need_two(g)?;
    let n = g.vertex_count();
    let ceiling = g.hedge_count() / (n - 1);
    let mut k = 0;
    while k < ceiling {
        match pack_bases(g, k + 1)? {
            PackingOutcome::Packed { .. } => k += 1,
            PackingOutcome::Certificate(_) => break,
        }
    }
    Ok(k as u64)
}

/// `PC = ⌊κ₁(f)⌋` for connected inputs, cross-checked against the packing number.
pub fn partition_connectivity(g: &Hedgegraph) -> Result<MeasureReport, MeasureError> {
    need_two(g)?;
    let packed = packing_number(g)?;
    if !is_connected(g) {
        let mut report = MeasureReport::exact(0, Witness::Partition(component_partition(g)), "components");
        report.methods_agree = Some(packed == 0);
        return Ok(report);
    }
    let kappa = min_ratio(g, &g.weights())?;
    let value = kappa.value.floor().expect("connected with n ≥ 2 has finite strength") as u64;
    let partition = components(g, &kappa.argmin).expect("capacity matches");
    let mut report = MeasureReport::exact(value, Witness::Partition(partition), "discrete_newton");
    report.methods_agree = Some(packed == value);
    report.ratio = Some(kappa.value);
    Ok(report)
}

/// Exact weak partition connectivity; only the exhaustive method exists.
pub fn weak_partition_connectivity(g: &Hedgegraph, limits: &OracleLimits) -> Result<MeasureReport, MeasureError> {
    let res = exact_wpc(g, limits)?;
    Ok(MeasureReport::exact(res.value as u64, Witness::Partition(res.partition), "exhaustive"))
}

/// Greedily extracts hedge-disjoint bases of `f`; the count never exceeds `k*`.
pub fn greedy_disjoint_bases(g: &Hedgegraph) -> Vec<HedgeSet> {
    let m = g.hedge_count();
    let target = f_unchecked(g, &g.all_hedges());
    let mut remaining = g.all_hedges();
    let mut bases = Vec::new();
    if target == 0 {
        return bases;
    }
    loop {
        let mut base = HedgeSet::empty(m);
        let mut rank = 0;
        while rank < target {
            // Largest marginal first; ties to the lowest id.
            let mut best: Option<(usize, HedgeId)> = None;
            for e in remaining.iter() {
                let gain = f_unchecked(g, &base.with(e)) - rank;
                if gain > 0 && best.is_none_or(|(b, _)| gain > b) {
                    best = Some((gain, e));
                }
            }
            let Some((gain, e)) = best else {
                return bases;
            };
            base.insert(e);
            remaining.remove(e);
            rank += gain;
        }
        bases.push(base);
    }
}

/// `⌊Σ_e (f(A+e) − f(A)) / (f(E) − f(A))⌋`, or `None` when `f(A) = f(E)`.
fn strength_bound(g: &Hedgegraph, a: &HedgeSet, f_full: usize) -> Option<u64> {
    let fa = f_unchecked(g, a);
    if fa == f_full {
        return None;
    }
    let total: usize = g.hedge_ids().map(|e| f_unchecked(g, &a.with(e)) - fa).sum();
    Some((total / (f_full - fa)) as u64)
}

/// An upper bound on `k*` from explicit candidate sets: `∅` and each `E ∖ δ({v})`.
pub fn kstar_certified_upper(g: &Hedgegraph) -> Option<u64> {
    let f_full = f_unchecked(g, &g.all_hedges());
    let mut best = strength_bound(g, &g.no_hedges(), f_full);
    for v in 0..g.vertex_count() {
        let around = HedgeSet::from_ids(
            g.hedge_count(),
            g.hedge_ids().filter(|&e| {
                !g.hedge(e)
                    .hyperedges()
                    .iter()
                    .any(|h| h.len() > 1 && h.contains(VertexId(v)))
            }),
        );
        if let Some(b) = strength_bound(g, &around, f_full) {
            best = Some(best.map_or(b, |x| x.min(b)));
        }
    }
    best
}

/// Band `[B, B·⌈c·ln f(E)⌉]` around `k*`, with `B` from greedy base extraction.
/// Carries the exact value when the subset sweep fits in `limits`.
pub fn kstar_approx(g: &Hedgegraph, limits: &OracleLimits) -> Result<MeasureReport, MeasureError> {
    need_two(g)?;
    if !is_connected(g) {
        return Err(MeasureError::Disconnected);
    }
    let bases = greedy_disjoint_bases(g);
    let b = bases.len() as u64;
    let f_full = f_unchecked(g, &g.all_hedges()) as f64;
    let factor = ((KSTAR_LOG_CONSTANT * f_full.ln()).ceil() as u64).max(1);
    let mut report = MeasureReport::exact(0, Witness::Bases(bases), "greedy_bases");
    report.value = MeasureValue::Band { lo: b, hi: b * factor };
    if let Ok(exact) = exact_kstar(g, limits) {
        report.exact = exact.floor();
        report.ratio = Some(exact.ratio);
    }
    Ok(report)
}

/// Band `[lo, hi] ∋ λ` from `B ≤ k* ≤ λ ≤ 2·k* + 1`, also capped by the minimum degree.
pub fn approx_connectivity(g: &Hedgegraph, limits: &OracleLimits) -> Result<MeasureReport, MeasureError> {
    need_two(g)?;
    if !is_connected(g) {
        return Ok(MeasureReport::exact(0, Witness::Partition(component_partition(g)), "components"));
    }
    let n = g.vertex_count();
    let lo = greedy_disjoint_bases(g).len() as u64;
    let kstar_upper = match exact_kstar(g, limits) {
        Ok(exact) => exact.floor(),
        Err(_) => kstar_certified_upper(g),
    }
    .expect("connected with n ≥ 2 has f(E) > 0");
    // Minimum vertex degree bounds λ directly.
    let labels_for = |v: usize| -> Vec<usize> { (0..n).map(|u| usize::from(u == v)).collect() };
    let (degree, vertex) = (0..n)
        .map(|v| {
            let labels = labels_for(v);
            let d = g
                .hedge_ids()
                .filter(|&e| crate::polymatroid::crosses_labels(g, e, &labels))
                .count() as u64;
            (d, v)
        })
        .min()
        .expect("n ≥ 2");
    let hi = (2 * kstar_upper + 1).min(degree);
    let mut report = MeasureReport::exact(0, Witness::Partition(Partition::bipartition(&labels_for(vertex).iter().map(|&l| l == 1).collect::<Vec<_>>())), "kstar_sandwich");
    report.value = MeasureValue::Band { lo, hi };
    Ok(report)
}

/// `κ_w` for arbitrary weights, re-exported as a measure.
pub fn w_strength(g: &Hedgegraph, weights: &[Rational]) -> Result<MeasureReport, MeasureError> {
    let res = min_ratio(g, weights)?;
    let mut report = MeasureReport::exact(res.value.floor().unwrap_or(0).max(0) as u64, Witness::Hedges(res.argmin), "discrete_newton");
    report.ratio = Some(res.value);
    Ok(report)
}

/// Prefix ranks of the hedge order, exposed for diagnostics.
pub fn rank_profile(g: &Hedgegraph) -> Vec<usize> {
    prefix_ranks(g, &g.hedge_ids().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{exact_connectivity, exact_pc};
    use crate::polymatroid::partition_boundary;
    use proptest::prelude::*;

    const L: OracleLimits = OracleLimits {
        max_vertices: 12,
        max_hedges: 20,
    };

    #[test]
    fn named_partition_connectivity() {
        assert_eq!(partition_connectivity(&fixtures::single_spanning_hedge(4)).unwrap().exact_value(), Some(0));
        assert_eq!(partition_connectivity(&fixtures::parallel_spanning(5)).unwrap().exact_value(), Some(1));
        let tri = partition_connectivity(&fixtures::triangle()).unwrap();
        assert_eq!(tri.exact_value(), Some(1));
        assert_eq!(tri.methods_agree, Some(true));
        let g = fixtures::three_hedges();
        let r = partition_connectivity(&g).unwrap();
        assert_eq!(r.exact_value(), Some(exact_pc(&g, &L).unwrap().value as u64));
        let split = Hedgegraph::from_index_hedges(4, vec![vec![vec![0, 1]], vec![vec![2, 3]]]).unwrap();
        let r = partition_connectivity(&split).unwrap();
        assert_eq!((r.exact_value(), r.method), (Some(0), "components"));
    }

    #[test]
    fn named_wpc() {
        assert_eq!(weak_partition_connectivity(&fixtures::single_spanning_hedge(5), &L).unwrap().exact_value(), Some(1));
        assert_eq!(weak_partition_connectivity(&fixtures::parallel_spanning(6), &L).unwrap().exact_value(), Some(5));
        assert_eq!(weak_partition_connectivity(&fixtures::wpc_separation(), &L).unwrap().exact_value(), Some(2));
    }

    #[test]
    fn greedy_strength_bands() {
        let g = fixtures::wpc_separation();
        let r = kstar_approx(&g, &L).unwrap();
        let (lo, _) = r.band();
        assert!(lo <= 3);
        assert_eq!(r.exact, Some(3));
        let one = kstar_approx(&fixtures::single_spanning_hedge(4), &L).unwrap();
        assert_eq!(one.band().0, 1);
        assert_eq!(one.exact, Some(1));
        assert!(matches!(
            kstar_approx(&Hedgegraph::from_index_hedges(3, vec![vec![vec![0, 1]]]).unwrap(), &L),
            Err(MeasureError::Disconnected)
        ));
    }

    #[test]
    fn connectivity_bands_on_named_graphs() {
        for n in 4..=8 {
            let (lo, hi) = approx_connectivity(&fixtures::parallel_spanning(n), &L).unwrap().band();
            assert!(lo < n as u64 && n as u64 <= hi + 1);
        }
        let (lo, hi) = approx_connectivity(&fixtures::triangle(), &L).unwrap().band();
        assert!(lo <= 2 && 2 <= hi);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn reports_match_oracles(g in fixtures::arb_hedgegraph(6, 8)) {
            prop_assume!(g.vertex_count() >= 2);
            let pc = partition_connectivity(&g).unwrap();
            let exact = exact_pc(&g, &L).unwrap().value as u64;
            prop_assert_eq!(pc.exact_value(), Some(exact));
            prop_assert_eq!(pc.methods_agree, Some(true));
            if let Witness::Partition(p) = &pc.witness {
                let d = partition_boundary(&g, p).unwrap().len() as u64;
                prop_assert_eq!(d / (p.block_count() as u64 - 1), exact);
            }
            let lambda = exact_connectivity(&g, &L).unwrap().value as u64;
            let (lo, hi) = approx_connectivity(&g, &L).unwrap().band();
            prop_assert!(lo <= lambda && lambda <= hi);
            if is_connected(&g) {
                let ks = exact_kstar(&g, &L).unwrap().floor().unwrap();
                prop_assert!(greedy_disjoint_bases(&g).len() as u64 <= ks);
                prop_assert!(kstar_certified_upper(&g).unwrap() >= ks);
            }
        }
    }
}
