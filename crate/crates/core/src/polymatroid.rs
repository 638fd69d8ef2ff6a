//! Components, cuts, partition boundaries and the hedgegraph polymatroid
//! `f(A) = n − #Comps(V, A)`.

use crate::dsu::DisjointSet;
use crate::graph::{GraphError, HedgeId, Hedgegraph, VertexId};
use crate::hedgeset::HedgeSet;
use crate::partition::Partition;
use crate::rational::Rational;

fn union_hedge(dsu: &mut DisjointSet, g: &Hedgegraph, e: HedgeId) -> usize {
    let mut merges = 0;
    for h in g.hedge(e).hyperedges() {
        let ids: Vec<usize> = h.indices().collect();
        merges += dsu.union_all(&ids);
    }
    merges
}

fn dsu_of(g: &Hedgegraph, a: &HedgeSet) -> DisjointSet {
    let mut dsu = DisjointSet::new(g.vertex_count());
    for e in a.iter() {
        union_hedge(&mut dsu, g, e);
    }
    dsu
}

/// Connected components of `(V, A)` as a canonical partition.
pub fn components(g: &Hedgegraph, a: &HedgeSet) -> Result<Partition, GraphError> {
    g.check_set(a)?;
    let mut dsu = dsu_of(g, a);
    let raw: Vec<usize> = (0..g.vertex_count()).map(|v| dsu.find(v)).collect();
    Ok(Partition::from_labels(&raw))
}

/// `f(A) = |V| − #Comps(V, A)`.
pub fn polymatroid_f(g: &Hedgegraph, a: &HedgeSet) -> Result<usize, GraphError> {
    g.check_set(a)?;
    Ok(f_unchecked(g, a))
}

pub(crate) fn f_unchecked(g: &Hedgegraph, a: &HedgeSet) -> usize {
    let dsu = dsu_of(g, a);
    g.vertex_count() - dsu.components()
}

/// Evaluates `f` incrementally on the prefixes of `order`; entry `i` is `f(order[..i])`.
pub fn prefix_ranks(g: &Hedgegraph, order: &[HedgeId]) -> Vec<usize> {
    let mut dsu = DisjointSet::new(g.vertex_count());
    let mut out = Vec::with_capacity(order.len() + 1);
    let mut rank = 0;
    out.push(0);
    for &e in order {
        rank += union_hedge(&mut dsu, g, e);
        out.push(rank);
    }
    out
}

/// `f` on every subset of the hedges, indexed by bitmask.
///
/// Each mask reuses the component labelling of the mask without its lowest
/// bit, so the table costs `O(2^m · (n + p_e))`.
pub(crate) fn f_table(g: &Hedgegraph) -> Vec<u8> {
    let n = g.vertex_count();
    let m = g.hedge_count();
    assert!(m < 32 && n < 256);
    let size = 1usize << m;
    let mut labels = vec![0u8; size * n];
    let mut ranks = vec![0u8; size];
    for (v, label) in labels[..n].iter_mut().enumerate() {
        *label = v as u8;
    }
    let mut relabel = vec![0u8; n];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let base = mask & (mask - 1);
        let (prev, cur) = labels.split_at_mut(mask * n);
        let src = &prev[base * n..base * n + n];
        let dst = &mut cur[..n];
        dst.copy_from_slice(src);
        let mut merges = 0u8;
        for h in g.hedge(HedgeId(low)).hyperedges() {
            let vs = h.vertices();
            let target = dst[vs[0].0];
            for v in &vs[1..] {
                let other = dst[v.0];
                if other != target {
                    merges += 1;
                    for (i, r) in relabel.iter_mut().enumerate() {
                        *r = i as u8;
                    }
                    relabel[other as usize] = target;
                    for l in dst.iter_mut() {
                        *l = relabel[*l as usize];
                    }
                }
            }
        }
        ranks[mask] = ranks[base] + merges;
    }
    ranks
}

fn vertex_flags(g: &Hedgegraph, s: &[VertexId]) -> Result<Vec<bool>, GraphError> {
    let n = g.vertex_count();
    let mut flags = vec![false; n];
    for v in s {
        if v.0 >= n {
            return Err(GraphError::InvalidVertexSet(format!("vertex {} out of range", v.0)));
        }
        flags[v.0] = true;
    }
    let count = flags.iter().filter(|&&b| b).count();
    if count == 0 || count == n {
        return Err(GraphError::InvalidVertexSet("S must be nonempty and proper".into()));
    }
    Ok(flags)
}

pub(crate) fn crosses_labels(g: &Hedgegraph, e: HedgeId, labels: &[usize]) -> bool {
    g.hedge(e).hyperedges().iter().any(|h| {
        let first = labels[h.vertices()[0].0];
        h.vertices()[1..].iter().any(|v| labels[v.0] != first)
    })
}

/// `δ(S)`: hedges with a hyperedge meeting both `S` and `V∖S`.
pub fn cut_hedges(g: &Hedgegraph, s: &[VertexId]) -> Result<HedgeSet, GraphError> {
    let flags = vertex_flags(g, s)?;
    let labels: Vec<usize> = flags.iter().map(|&b| usize::from(b)).collect();
    Ok(HedgeSet::from_ids(
        g.hedge_count(),
        g.hedge_ids().filter(|&e| crosses_labels(g, e, &labels)),
    ))
}

/// Weighted cut value `d(S) = Σ_{e∈δ(S)} w(e)`; equals `|δ(S)|` for unit weights.
pub fn cut_value(g: &Hedgegraph, s: &[VertexId]) -> Result<Rational, GraphError> {
    let cut = cut_hedges(g, s)?;
    Ok(cut.iter().map(|e| g.hedge(e).weight).sum())
}

fn check_partition(g: &Hedgegraph, p: &Partition) -> Result<(), GraphError> {
    if p.vertex_count() != g.vertex_count() {
        return Err(GraphError::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// `δ(𝒫)`: hedges with a hyperedge meeting at least two blocks.
pub fn partition_boundary(g: &Hedgegraph, p: &Partition) -> Result<HedgeSet, GraphError> {
    check_partition(g, p)?;
    Ok(boundary_unchecked(g, p.labels()))
}

pub(crate) fn boundary_unchecked(g: &Hedgegraph, labels: &[usize]) -> HedgeSet {
    HedgeSet::from_ids(
        g.hedge_count(),
        g.hedge_ids().filter(|&e| crosses_labels(g, e, labels)),
    )
}

/// `E[𝒫] = E ∖ δ(𝒫)`.
pub fn internal_hedges(g: &Hedgegraph, p: &Partition) -> Result<HedgeSet, GraphError> {
    Ok(partition_boundary(g, p)?.complement())
}

/// `|𝒫| − #Comps(𝒫(e))`: the rank the hedge adds after contracting every block.
pub fn wpc_term(g: &Hedgegraph, p: &Partition, e: HedgeId) -> Result<usize, GraphError> {
    check_partition(g, p)?;
    if e.0 >= g.hedge_count() {
        return Err(GraphError::UnknownHedge(e.0));
    }
    Ok(wpc_term_unchecked(g, p.labels(), p.block_count(), e))
}

pub(crate) fn wpc_term_unchecked(g: &Hedgegraph, labels: &[usize], blocks: usize, e: HedgeId) -> usize {
    let mut dsu = DisjointSet::new(blocks);
    let mut merges = 0;
    for h in g.hedge(e).hyperedges() {
        let ids: Vec<usize> = h.indices().map(|v| labels[v]).collect();
        merges += dsu.union_all(&ids);
    }
    merges
}

/// `span(A) = {e : f(A + e) = f(A)}`.
pub fn span(g: &Hedgegraph, a: &HedgeSet) -> Result<HedgeSet, GraphError> {
    g.check_set(a)?;
    Ok(span_unchecked(g, a))
}

pub(crate) fn span_unchecked(g: &Hedgegraph, a: &HedgeSet) -> HedgeSet {
    let mut dsu = dsu_of(g, a);
    let labels: Vec<usize> = (0..g.vertex_count()).map(|v| dsu.find(v)).collect();
    // A hedge has zero marginal iff none of its hyperedges crosses a component.
    HedgeSet::from_ids(
        g.hedge_count(),
        g.hedge_ids().filter(|&e| !crosses_labels(g, e, &labels)),
    )
}

pub fn is_closed(g: &Hedgegraph, a: &HedgeSet) -> Result<bool, GraphError> {
    Ok(&span(g, a)? == a)
}
