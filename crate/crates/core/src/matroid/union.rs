//! Matroid union over `k` classes: base packing and covering.

use std::collections::{HashMap, VecDeque};

use crate::graph::{HedgeId, Hedgegraph};
use crate::hedgeset::HedgeSet;
use crate::partition::Partition;
use crate::polymatroid::components;

use super::{rank_unchecked, Augmenter, MatroidError, Trimming};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackingOutcome {
    /// `k` disjoint hedge sets, each trimming to a spanning tree.
    Packed {
        bases: Vec<HedgeSet>,
        trimmings: Vec<Trimming>,
        leftover: HedgeSet,
    },
    /// `|δ(𝒫)| < k(|𝒫| − 1)`.
    Certificate(Partition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// At most `k` disjoint independent sets covering every hedge.
    Cover { classes: Vec<HedgeSet>, trimmings: Vec<Trimming> },
    /// `|E[𝒫]| > k(|V| − |𝒫|)`.
    Certificate(Partition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCover {
    pub k: usize,
    pub classes: Vec<HedgeSet>,
    pub trimmings: Vec<Trimming>,
    /// Violating partition at `k − 1`; `None` when `k = 1`.
    pub below: Option<Partition>,
}

struct Union<'g> {
    g: &'g Hedgegraph,
    class_of: Vec<Option<usize>>,
    states: Vec<Augmenter<'g>>,
}

/// BFS result over the hedge exchange graph.
struct Exploration {
    sink: Option<(HedgeId, usize)>,
    prev: Vec<Option<(HedgeId, usize)>>,
    seen: Vec<bool>,
}

impl<'g> Union<'g> {
    fn new(g: &'g Hedgegraph, k: usize) -> Self {
        Self {
            g,
            class_of: vec![None; g.hedge_count()],
            states: (0..k).map(|_| Augmenter::new(g)).collect(),
        }
    }

    fn class_set(&self, i: usize) -> HedgeSet {
        HedgeSet::from_ids(
            self.g.hedge_count(),
            self.g.hedge_ids().filter(|e| self.class_of[e.0] == Some(i)),
        )
    }

    /// Arcs `u → y` in class `i` (`I_i − y + u` independent), or `Err(())` if `u` is a sink for `i`.
    fn exchanges(&self, u: HedgeId, i: usize, without: &mut HashMap<(usize, HedgeId), Augmenter<'g>>) -> Result<Vec<HedgeId>, ()> {
        let mut probe = self.states[i].clone();
        if probe.try_add(u).is_ok() {
            return Err(());
        }
        let members = self.class_set(i);
        let mut out = Vec::new();
        for y in members.iter() {
            let base = without.entry((i, y)).or_insert_with(|| {
                Augmenter::from_set(self.g, &members.without(y)).expect("subset of independent set")
            });
            let mut probe = base.clone();
            if probe.try_add(u).is_ok() {
                out.push(y);
            }
        }
        Ok(out)
    }

    fn explore(&self, starts: &[HedgeId], stop_at_sink: bool) -> Exploration {
        let m = self.g.hedge_count();
        let mut prev = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for &s in starts {
            seen[s.0] = true;
            queue.push_back(s);
        }
        let mut without = HashMap::new();
        while let Some(u) = queue.pop_front() {
            for i in 0..self.states.len() {
                if self.class_of[u.0] == Some(i) {
                    continue;
                }
                match self.exchanges(u, i, &mut without) {
                    Err(()) => {
                        if stop_at_sink {
                            return Exploration {
                                sink: Some((u, i)),
                                prev,
                                seen,
                            };
                        }
                        debug_assert!(false, "reachable sink from a saturated hedge");
                    }
                    Ok(arcs) => {
                        for y in arcs {
                            if !seen[y.0] {
                                seen[y.0] = true;
                                prev[y.0] = Some((u, i));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        Exploration { sink: None, prev, seen }
    }

    fn insert(&mut self, x: HedgeId) -> bool {
        let Exploration { sink, prev, .. } = self.explore(&[x], true);
        let Some((mut u, mut class)) = sink else {
            return false;
        };
        let mut touched = vec![class];
        loop {
            self.class_of[u.0] = Some(class);
            match prev[u.0] {
                None => break,
                Some((p, c)) => {
                    // u leaves class c for `class`; p takes its place in c.
                    touched.push(c);
                    u = p;
                    class = c;
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for i in touched {
            let set = self.class_set(i);
            self.states[i] = Augmenter::from_set(self.g, &set).expect("augmenting path keeps classes independent");
        }
        true
    }

    /// Hedges reachable from `starts`, which must all be saturated.
    fn reachable(&self, starts: &[HedgeId]) -> HedgeSet {
        let ex = self.explore(starts, false);
        HedgeSet::from_indices(self.g.hedge_count(), (0..self.g.hedge_count()).filter(|&e| ex.seen[e]))
    }

    fn classes(&self) -> (Vec<HedgeSet>, Vec<Trimming>) {
        let sets = (0..self.states.len()).map(|i| self.class_set(i)).collect();
        let trims = self.states.iter().map(Augmenter::trimming).collect();
        (sets, trims)
    }

    /// `comps(B)` for the rank certificate `B` of the reachable set.
    fn certificate(&self, starts: &[HedgeId]) -> Partition {
        let reach = self.reachable(starts);
        let b = rank_unchecked(self.g, &reach).certificate;
        components(self.g, &b).expect("capacity matches")
    }
}

/// `k` hedge-disjoint sub-hedgegraphs each trimming to a spanning tree, or a partition
/// with `|δ(𝒫)| < k(|𝒫| − 1)`.
pub fn pack_bases(g: &Hedgegraph, k: usize) -> Result<PackingOutcome, MatroidError> {
    if k == 0 {
        return Err(MatroidError::ZeroK);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(MatroidError::TooFewVertices(n));
    }
    let target = k * (n - 1);
    let mut un = Union::new(g, k);
    let mut placed = 0;
    let mut leftover = Vec::new();
    for e in g.hedge_ids() {
        if placed < target && un.insert(e) {
            placed += 1;
        } else {
            leftover.push(e);
        }
    }
    if placed == target {
        let (bases, trimmings) = un.classes();
        return Ok(PackingOutcome::Packed {
            bases,
            trimmings,
            leftover: HedgeSet::from_ids(g.hedge_count(), leftover),
        });
    }
    Ok(PackingOutcome::Certificate(un.certificate(&leftover)))
}

/// Partition of the hedges into at most `k` independent sets, or a partition with
/// `|E[𝒫]| > k(|V| − |𝒫|)`.
pub fn cover_acyclic_trimmable(g: &Hedgegraph, k: usize) -> Result<CoverOutcome, MatroidError> {
    if k == 0 {
        return Err(MatroidError::ZeroK);
    }
    let mut un = Union::new(g, k);
    for e in g.hedge_ids() {
        if !un.insert(e) {
            return Ok(CoverOutcome::Certificate(un.certificate(&[e])));
        }
    }
    let (classes, trimmings) = un.classes();
    Ok(CoverOutcome::Cover { classes, trimmings })
}

/// Smallest `k` admitting a cover. Fails with a certificate when a hedge has no
/// vertex pair at all, since such a hedge is never acyclic-trimmable.
pub fn min_cover_number(g: &Hedgegraph) -> Result<MinCover, Partition> {
    if g.hedges().iter().any(|h| h.is_trivial()) {
        return Err(Partition::singletons(g.vertex_count()));
    }
    let solve = |k: usize| cover_acyclic_trimmable(g, k).expect("k ≥ 1");
    let (mut lo, mut hi) = (1, g.hedge_count().max(1));
    while lo < hi {
        let mid = (lo + hi) / 2;
        match solve(mid) {
            CoverOutcome::Cover { .. } => hi = mid,
            CoverOutcome::Certificate(_) => lo = mid + 1,
        }
    }
    let CoverOutcome::Cover { classes, trimmings } = solve(lo) else {
        unreachable!("k = m always covers hedges with a vertex pair")
    };
    let below = (lo > 1).then(|| match solve(lo - 1) {
        CoverOutcome::Certificate(p) => p,
        CoverOutcome::Cover { .. } => unreachable!("binary search minimum"),
    });
    Ok(MinCover {
        k: lo,
        classes,
        trimmings,
        below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{exact_pc, OracleLimits};
    use crate::polymatroid::{internal_hedges, partition_boundary};
    use proptest::prelude::*;

    fn check_packing(g: &Hedgegraph, k: usize, outcome: &PackingOutcome) -> bool {
        let n = g.vertex_count();
        match outcome {
            PackingOutcome::Packed { bases, trimmings, .. } => {
                let mut union = g.no_hedges();
                for (b, t) in bases.iter().zip(trimmings) {
                    if !b.is_disjoint(&union) || !t.is_spanning_tree(n) || t.hedges(g.hedge_count()) != *b {
                        return false;
                    }
                    union = union.union(b);
                }
                bases.len() == k
            }
            PackingOutcome::Certificate(p) => partition_boundary(g, p).unwrap().len() < k * (p.block_count() - 1),
        }
    }

    fn cover_violation(g: &Hedgegraph, k: usize, p: &Partition) -> bool {
        internal_hedges(g, p).unwrap().len() > k * (g.vertex_count() - p.block_count())
    }

    #[test]
    fn parallel_spanning_packs_once() {
        let g = fixtures::parallel_spanning(4);
        let one = pack_bases(&g, 1).unwrap();
        assert!(matches!(&one, PackingOutcome::Packed { bases, .. } if bases[0].len() == 3));
        assert!(check_packing(&g, 1, &one));
        let two = pack_bases(&g, 2).unwrap();
        assert!(matches!(two, PackingOutcome::Certificate(_)));
        assert!(check_packing(&g, 2, &two));
    }

    #[test]
    fn triangle_packs_one_tree() {
        let g = fixtures::triangle();
        let one = pack_bases(&g, 1).unwrap();
        assert!(check_packing(&g, 1, &one));
        assert!(matches!(&one, PackingOutcome::Packed { bases, .. } if bases[0].len() == 2));
        let two = pack_bases(&g, 2).unwrap();
        assert!(matches!(two, PackingOutcome::Certificate(_)) && check_packing(&g, 2, &two));
    }

    #[test]
    fn cover_numbers() {
        let g = fixtures::trimming_example();
        let four = g.subgraph(&HedgeSet::from_indices(5, [0, 1, 2, 3])).unwrap();
        assert_eq!(min_cover_number(&four).unwrap().k, 1);
        for n in 3..=7 {
            assert_eq!(min_cover_number(&fixtures::parallel_spanning(n)).unwrap().k, 1);
        }
        let parallel = Hedgegraph::from_index_hedges(3, vec![vec![vec![0, 1]]; 4]).unwrap();
        let res = min_cover_number(&parallel).unwrap();
        assert_eq!(res.k, 4);
        assert!(cover_violation(&parallel, 3, res.below.as_ref().unwrap()));
    }

    #[test]
    fn uncoverable_inputs() {
        let g = fixtures::single_spanning_hedge(1);
        match cover_acyclic_trimmable(&g, 3).unwrap() {
            CoverOutcome::Certificate(p) => assert!(cover_violation(&g, 3, &p)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(min_cover_number(&g).is_err());
        assert!(matches!(pack_bases(&g, 1), Err(MatroidError::TooFewVertices(1))));
        assert!(matches!(pack_bases(&fixtures::triangle(), 0), Err(MatroidError::ZeroK)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn packing_matches_partition_connectivity(g in fixtures::arb_hedgegraph(6, 8)) {
            prop_assume!(g.vertex_count() >= 2);
            let pc = exact_pc(&g, &OracleLimits::default()).unwrap().value;
            for k in 1..=pc + 1 {
                let out = pack_bases(&g, k).unwrap();
                prop_assert!(check_packing(&g, k, &out));
                prop_assert_eq!(matches!(out, PackingOutcome::Packed { .. }), k <= pc);
            }
        }

        #[test]
        fn cover_outcomes_are_certified(g in fixtures::arb_hedgegraph(6, 7), k in 1usize..4) {
            match cover_acyclic_trimmable(&g, k).unwrap() {
                CoverOutcome::Cover { classes, trimmings } => {
                    let mut union = g.no_hedges();
                    for (c, t) in classes.iter().zip(&trimmings) {
                        prop_assert!(c.is_disjoint(&union));
                        prop_assert!(t.is_forest(g.vertex_count()) && t.hedges(g.hedge_count()) == *c);
                        union = union.union(c);
                    }
                    prop_assert_eq!(union, g.all_hedges());
                }
                CoverOutcome::Certificate(p) => prop_assert!(cover_violation(&g, k, &p)),
            }
        }
    }
}
