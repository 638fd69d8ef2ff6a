//! Incremental independence testing by matroid intersection.
//!
//! Ground set: every vertex pair inside a hyperedge of a member hedge. The
//! graphic matroid on those pairs is intersected with the partition matroid
//! allowing one pair per hedge; a hedge set is independent exactly when the
//! intersection covers every hedge.

use std::collections::VecDeque;

use crate::dsu::DisjointSet;
use crate::graph::{HedgeId, Hedgegraph, VertexId};
use crate::hedgeset::HedgeSet;

use super::{TrimElement, Trimming};

/// Every trim of a hedge, ordered by hyperedge index and then by vertex pair.
pub(crate) fn trims_of(g: &Hedgegraph, e: HedgeId) -> Vec<TrimElement> {
    let mut out = Vec::new();
    for (hi, h) in g.hedge(e).hyperedges().iter().enumerate() {
        let vs = h.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push(TrimElement {
                    hedge: e,
                    hyperedge: hi,
                    pair: (vs[i], vs[j]),
                });
            }
        }
    }
    out
}

/// An independent hedge set together with a forest trimming of it.
#[derive(Debug, Clone)]
pub(crate) struct Augmenter<'g> {
    g: &'g Hedgegraph,
    trims: Vec<Option<Vec<TrimElement>>>,
    chosen: Vec<Option<usize>>,
    members: Vec<HedgeId>,
}

struct Forest {
    comp: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl Forest {
    /// `edges[i] = (u, v)`; edge ids are positions in the slice.
    fn build(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut comp = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = root;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(v, id) in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = root;
                        parent[v] = Some((u, id));
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        Self { comp, parent, depth }
    }

    /// Edge ids on the tree path between two connected vertices.
    fn path(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.depth[u] > self.depth[v] {
            let (p, id) = self.parent[u].expect("non-root");
            out.push(id);
            u = p;
        }
        while self.depth[v] > self.depth[u] {
            let (p, id) = self.parent[v].expect("non-root");
            out.push(id);
            v = p;
        }
        while u != v {
            let (pu, iu) = self.parent[u].expect("non-root");
            let (pv, iv) = self.parent[v].expect("non-root");
            out.push(iu);
            out.push(iv);
            u = pu;
            v = pv;
        }
        out
    }
}

impl<'g> Augmenter<'g> {
    pub(crate) fn new(g: &'g Hedgegraph) -> Self {
        Self {
            g,
            trims: vec![None; g.hedge_count()],
            chosen: vec![None; g.hedge_count()],
            members: Vec::new(),
        }
    }

    /// Adds hedges in order; `Err` carries the first dependence certificate.
    pub(crate) fn from_set(g: &'g Hedgegraph, set: &HedgeSet) -> Result<Self, HedgeSet> {
        let mut aug = Self::new(g);
        for e in set.iter() {
            aug.try_add(e)?;
        }
        Ok(aug)
    }

    fn trims(&mut self, e: HedgeId) -> &[TrimElement] {
        let g = self.g;
        self.trims[e.0].get_or_insert_with(|| trims_of(g, e))
    }

    pub(crate) fn members(&self) -> &[HedgeId] {
        &self.members
    }

    pub(crate) fn contains(&self, e: HedgeId) -> bool {
        self.chosen[e.0].is_some()
    }

    pub(crate) fn trimming(&self) -> Trimming {
        let mut elements: Vec<TrimElement> = self
            .members
            .iter()
            .map(|&e| self.trims[e.0].as_ref().expect("member trims")[self.chosen[e.0].expect("member")])
            .collect();
        elements.sort_by_key(|t| t.hedge);
        Trimming::from_elements(elements)
    }

    pub(crate) fn member_set(&self) -> HedgeSet {
        HedgeSet::from_ids(self.g.hedge_count(), self.members.iter().copied())
    }

    /// Tries to extend the independent set by `x` with one shortest augmenting path.
    ///
    /// On failure the state is unchanged and the error is `B ⊆ members + x` with
    /// `f(B) + |members + x − B| = |members|`, hence `|B| > f(B)`.
    pub(crate) fn try_add(&mut self, x: HedgeId) -> Result<(), HedgeSet> {
        assert!(!self.contains(x), "hedge {x} already present");
        let mut ground: Vec<HedgeId> = self.members.clone();
        ground.push(x);
        match self.search(ground) {
            Search::Path(path) => {
                // Every outside element on the path becomes its hedge's choice,
                // which also evicts the forest elements between them.
                for (e, t) in path {
                    self.chosen[e.0] = Some(t);
                }
                self.members.push(x);
                debug_assert!(self.trimming().is_forest(self.g.vertex_count()));
                Ok(())
            }
            Search::Cut(b) => Err(b),
        }
    }

    /// For `all ⊇ members` with no hedge of `all ∖ members` addable: `B ⊆ all`
    /// with `f(B) + |all ∖ B| = |members|`.
    pub(crate) fn rank_certificate(&mut self, all: &HedgeSet) -> HedgeSet {
        match self.search(all.ids()) {
            Search::Cut(b) => b,
            Search::Path(_) => panic!("members are not a basis of the given set"),
        }
    }

    fn search(&mut self, mut ground: Vec<HedgeId>) -> Search {
        ground.sort();
        ground.dedup();
        for &e in &ground {
            self.trims(e);
        }

        // Flat node list: (hedge, trim index), hedge-major.
        let mut nodes: Vec<(HedgeId, usize)> = Vec::new();
        let mut chosen_node = vec![None; self.g.hedge_count()];
        for &e in &ground {
            let count = self.trims[e.0].as_ref().expect("computed").len();
            for t in 0..count {
                if self.chosen[e.0] == Some(t) {
                    chosen_node[e.0] = Some(nodes.len());
                }
                nodes.push((e, t));
            }
        }
        let trim = |(e, t): (HedgeId, usize)| -> (usize, usize) {
            let p = self.trims[e.0].as_ref().expect("computed")[t].pair;
            (p.0 .0, p.1 .0)
        };
        let in_forest = |(e, t): (HedgeId, usize)| self.chosen[e.0] == Some(t);

        let forest_nodes: Vec<usize> = (0..nodes.len()).filter(|&i| in_forest(nodes[i])).collect();
        let edges: Vec<(usize, usize)> = forest_nodes.iter().map(|&i| trim(nodes[i])).collect();
        let forest = Forest::build(self.g.vertex_count(), &edges);

        // Arcs from a forest element y to outside elements whose tree path uses y.
        let mut from_forest: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        let mut sources = Vec::new();
        for (i, &node) in nodes.iter().enumerate() {
            if in_forest(node) {
                continue;
            }
            let (u, v) = trim(node);
            if forest.comp[u] != forest.comp[v] {
                sources.push(i);
            } else {
                for id in forest.path(u, v) {
                    from_forest[forest_nodes[id]].push(i);
                }
            }
        }

        let mut prev: Vec<Option<usize>> = vec![None; nodes.len()];
        let mut seen = vec![false; nodes.len()];
        let mut queue = VecDeque::new();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut sink = None;
        while let Some(i) = queue.pop_front() {
            let node = nodes[i];
            if in_forest(node) {
                for &z in &from_forest[i] {
                    if !seen[z] {
                        seen[z] = true;
                        prev[z] = Some(i);
                        queue.push_back(z);
                    }
                }
            } else {
                match chosen_node[node.0 .0] {
                    None => {
                        sink = Some(i);
                        break;
                    }
                    Some(y) => {
                        if !seen[y] {
                            seen[y] = true;
                            prev[y] = Some(i);
                            queue.push_back(y);
                        }
                    }
                }
            }
        }

        match sink {
            Some(end) => {
                let mut path = Vec::new();
                let mut cur = Some(end);
                while let Some(i) = cur {
                    if !in_forest(nodes[i]) {
                        path.push(nodes[i]);
                    }
                    cur = prev[i];
                }
                Search::Path(path)
            }
            None => {
                let mut touched = vec![false; self.g.hedge_count()];
                for (i, &(e, _)) in nodes.iter().enumerate() {
                    if seen[i] {
                        touched[e.0] = true;
                    }
                }
                Search::Cut(HedgeSet::from_ids(
                    self.g.hedge_count(),
                    ground.into_iter().filter(|e| !touched[e.0]),
                ))
            }
        }
    }
}

enum Search {
    /// Outside elements of a shortest augmenting path.
    Path(Vec<(HedgeId, usize)>),
    /// Hedges with no element reachable from the sources.
    Cut(HedgeSet),
}

/// Union-find check that trims form a forest.
pub(crate) fn pairs_acyclic(n: usize, pairs: impl Iterator<Item = (VertexId, VertexId)>) -> (bool, usize) {
    let mut dsu = DisjointSet::new(n);
    let mut edges = 0;
    for (u, v) in pairs {
        edges += 1;
        if !dsu.union(u.0, v.0) {
            return (false, edges);
        }
    }
    (true, edges)
}
