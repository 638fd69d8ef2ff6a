//! Rooted out-orientations lifted from spanning-tree trimmings.
//!
//! An orientation picks one hyperedge per hedge and a head inside it. A set
//! `U` sends out a hyperedge when its head lies in `U` and it reaches outside
//! `U`; the orientation is rooted `k`-out connected when every `U ∋ root`
//! other than `V` sends out at least `k`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{GraphError, HedgeId, Hedgegraph, VertexId};
use crate::matroid::{pack_bases, MatroidError, PackingOutcome, Trimming};
use crate::oracle::{OracleError, OracleLimits};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrientedHedge {
    pub hedge: HedgeId,
    pub hyperedge: usize,
    pub head: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub root: VertexId,
    /// One entry per hedge, in hedge order.
    pub choices: Vec<OrientedHedge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientOutcome {
    Oriented(Orientation),
    /// `|δ(𝒫)| < k(|𝒫| − 1)`, so no packing of `k` spanning trimmings exists.
    Certificate(Partition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationCheck {
    pub valid: bool,
    /// First `U` in enumeration order with out-degree below `k`.
    pub violating: Option<Vec<VertexId>>,
    pub min_out_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrientError {
    #[error("root vertex {0} is out of range")]
    InvalidRoot(usize),
    #[error("orientation is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Heads each tree edge at its endpoint nearer the root.
fn orient_tree(n: usize, root: VertexId, trimming: &Trimming, out: &mut [Option<OrientedHedge>]) {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, t) in trimming.elements().iter().enumerate() {
        adj[t.pair.0 .0].push((t.pair.1 .0, i));
        adj[t.pair.1 .0].push((t.pair.0 .0, i));
    }
    let mut seen = vec![false; n];
    seen[root.0] = true;
    let mut queue = VecDeque::from([root.0]);
    while let Some(u) = queue.pop_front() {
        for &(v, i) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                let t = trimming.elements()[i];
                out[t.hedge.0] = Some(OrientedHedge {
                    hedge: t.hedge,
                    hyperedge: t.hyperedge,
                    head: VertexId(u),
                });
                queue.push_back(v);
            }
        }
    }
}

/// A rooted `k`-out orientation from `k` packed spanning trimmings, or the packing certificate.
pub fn orient(g: &Hedgegraph, k: usize, root: VertexId) -> Result<OrientOutcome, OrientError> {
    let n = g.vertex_count();
    if root.0 >= n {
        return Err(OrientError::InvalidRoot(root.0));
    }
    let trimmings = match pack_bases(g, k)? {
        PackingOutcome::Certificate(p) => return Ok(OrientOutcome::Certificate(p)),
        PackingOutcome::Packed { trimmings, .. } => trimmings,
    };
    let mut out: Vec<Option<OrientedHedge>> = vec![None; g.hedge_count()];
    for t in &trimmings {
        orient_tree(n, root, t, &mut out);
    }
    let choices = g
        .hedge_ids()
        .map(|e| {
            out[e.0].unwrap_or_else(|| OrientedHedge {
                hedge: e,
                hyperedge: 0,
                head: g.hedge(e).hyperedges()[0].min_vertex(),
            })
        })
        .collect();
    Ok(OrientOutcome::Oriented(Orientation { root, choices }))
}

fn check_shape(g: &Hedgegraph, o: &Orientation) -> Result<(), OrientError> {
    if o.choices.len() != g.hedge_count() {
        return Err(OrientError::Malformed(format!(
            "{} choices for {} hedges",
            o.choices.len(),
            g.hedge_count()
        )));
    }
    for (i, c) in o.choices.iter().enumerate() {
        if c.hedge.0 != i {
            return Err(OrientError::Malformed(format!("choice {i} names hedge {}", c.hedge.0)));
        }
        let Some(h) = g.hedge(c.hedge).hyperedges().get(c.hyperedge) else {
            return Err(OrientError::Malformed(format!("hedge {i} has no hyperedge {}", c.hyperedge)));
        };
        if !h.contains(c.head) {
            return Err(OrientError::Malformed(format!("head of hedge {i} is outside its hyperedge")));
        }
    }
    Ok(())
}

/// Checks `d_out(U) ≥ k` for every `root ∈ U ⊊ V` by enumeration.
pub fn verify_orientation(
    g: &Hedgegraph,
    o: &Orientation,
    k: usize,
    root: VertexId,
    limits: &OracleLimits,
) -> Result<OrientationCheck, OrientError> {
    let n = g.vertex_count();
    if root.0 >= n {
        return Err(OrientError::InvalidRoot(root.0));
    }
    check_shape(g, o)?;
    limits.check_vertices(g)?;
    let others: Vec<usize> = (0..n).filter(|&v| v != root.0).collect();
    let mut inside = vec![false; n];
    let mut min_out: Option<usize> = None;
    for mask in 0..(1u64 << others.len()) - 1 {
        inside.iter_mut().for_each(|b| *b = false);
        inside[root.0] = true;
        for (i, &v) in others.iter().enumerate() {
            inside[v] = mask >> i & 1 == 1;
        }
        let out = o
            .choices
            .iter()
            .filter(|c| {
                let h = &g.hedge(c.hedge).hyperedges()[c.hyperedge];
                inside[c.head.0] && h.vertices().iter().any(|v| !inside[v.0])
            })
            .count();
        min_out = Some(min_out.map_or(out, |m| m.min(out)));
        if out < k {
            let u = (0..n).filter(|&v| inside[v]).map(VertexId).collect();
            return Ok(OrientationCheck {
                valid: false,
                violating: Some(u),
                min_out_degree: min_out,
            });
        }
    }
    Ok(OrientationCheck {
        valid: true,
        violating: None,
        min_out_degree: min_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::exact_pc;
    use crate::polymatroid::partition_boundary;
    use proptest::prelude::*;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn orientation_example_at_one_and_two() {
        let g = fixtures::orientation_example();
        let OrientOutcome::Oriented(o) = orient(&g, 1, v(0)).unwrap() else {
            panic!("k = 1 is feasible");
        };
        let heads: Vec<VertexId> = o.choices.iter().map(|c| c.head).collect();
        assert_eq!(heads, vec![v(0), v(0), v(1)]);
        assert_eq!(o.choices[1].hyperedge, 0);
        let limits = OracleLimits::default();
        assert!(verify_orientation(&g, &o, 1, v(0), &limits).unwrap().valid);
        let check = verify_orientation(&g, &o, 2, v(0), &limits).unwrap();
        assert!(!check.valid);
        let u = check.violating.unwrap();
        assert!(u == vec![v(0), v(1), v(3)] || u == vec![v(0), v(2), v(3)], "{u:?}");
        match orient(&g, 2, v(0)).unwrap() {
            OrientOutcome::Certificate(p) => {
                assert!(partition_boundary(&g, &p).unwrap().len() < 2 * (p.block_count() - 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn orientation_fixture_matches_hand_values() {
        // e1 on {A,C,D} headed A, e2 on {A,B} headed A, e3 on {B,D} headed B.
        let g = fixtures::orientation_example();
        let o = Orientation {
            root: v(0),
            choices: vec![
                OrientedHedge { hedge: HedgeId(0), hyperedge: 0, head: v(0) },
                OrientedHedge { hedge: HedgeId(1), hyperedge: 0, head: v(0) },
                OrientedHedge { hedge: HedgeId(2), hyperedge: 0, head: v(1) },
            ],
        };
        let check = verify_orientation(&g, &o, 1, v(0), &OracleLimits::default()).unwrap();
        assert!(check.valid);
        assert_eq!(check.min_out_degree, Some(1));
    }

    #[test]
    fn empty_graph_is_trivially_oriented() {
        let g = Hedgegraph::from_index_hedges(3, vec![]).unwrap();
        let o = Orientation { root: v(0), choices: vec![] };
        assert!(verify_orientation(&g, &o, 0, v(0), &OracleLimits::default()).unwrap().valid);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = fixtures::triangle();
        assert!(matches!(orient(&g, 1, v(7)), Err(OrientError::InvalidRoot(7))));
        let bad = Orientation {
            root: v(0),
            choices: vec![OrientedHedge { hedge: HedgeId(0), hyperedge: 0, head: v(2) }],
        };
        assert!(matches!(
            verify_orientation(&g, &bad, 1, v(0), &OracleLimits::default()),
            Err(OrientError::Malformed(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn orientations_verify_for_every_root(g in fixtures::arb_hedgegraph(6, 8)) {
            prop_assume!(g.vertex_count() >= 2);
            let limits = OracleLimits::default();
            let pc = exact_pc(&g, &limits).unwrap().value;
            for k in 1..=pc {
                for r in 0..g.vertex_count() {
                    let OrientOutcome::Oriented(o) = orient(&g, k, v(r)).unwrap() else {
                        return Err(TestCaseError::fail("packing failed below PC"));
                    };
                    prop_assert!(verify_orientation(&g, &o, k, v(r), &limits).unwrap().valid);
                }
            }
        }
    }
}
