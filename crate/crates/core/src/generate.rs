//! Seeded random hedgegraphs for experiments and test corpora.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Hedge, Hedgegraph, Hyperedge, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_hedges: usize,
    pub max_hyperedge_size: usize,
    pub max_hyperedges_per_hedge: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            min_vertices: 2,
            max_vertices: 7,
            max_hedges: 8,
            max_hyperedge_size: 4,
            max_hyperedges_per_hedge: 3,
        }
    }
}

/// Draws one hedge whose hyperedges are disjoint by construction.
pub fn random_hedge<R: Rng + ?Sized>(rng: &mut R, n: usize, params: &GeneratorParams, name: String) -> Hedge {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let count = rng.random_range(1..=params.max_hyperedges_per_hedge.max(1));
    let mut hyperedges = Vec::new();
    let mut rest = &order[..];
    for _ in 0..count {
        if rest.is_empty() {
            break;
        }
        let upper = params.max_hyperedge_size.max(1).min(rest.len());
        let lower = 2.min(upper);
        let size = rng.random_range(lower..=upper);
        let (take, tail) = rest.split_at(size);
        hyperedges.push(Hyperedge::new(take.iter().map(|&v| VertexId(v))).expect("nonempty"));
        rest = tail;
    }
    Hedge::unit(name, hyperedges)
}

/// A unit-weight hedgegraph with `n` and `m` drawn uniformly within the bounds (`m ≥ 1`).
pub fn random_hedgegraph<R: Rng + ?Sized>(rng: &mut R, params: &GeneratorParams) -> Hedgegraph {
    let n = rng.random_range(params.min_vertices..=params.max_vertices);
    let m = rng.random_range(1..=params.max_hedges.max(1));
    random_hedgegraph_with(rng, n, m, params)
}

pub fn random_hedgegraph_with<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, params: &GeneratorParams) -> Hedgegraph {
    let names = (0..n).map(|i| format!("v{i}")).collect();
    let hedges = (0..m).map(|i| random_hedge(rng, n, params, format!("e{i}"))).collect();
    Hedgegraph::new(names, hedges).expect("generated hedgegraph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_bounds() {
        let params = GeneratorParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = random_hedgegraph(&mut rng, &params);
            assert!((2..=7).contains(&g.vertex_count()));
            assert!((1..=8).contains(&g.hedge_count()));
            for h in g.hedges() {
                assert!(h.hyperedges().len() <= 3);
                assert!(h.hyperedges().iter().all(|x| x.len() <= 4));
            }
        }
    }
}
