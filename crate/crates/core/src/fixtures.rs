//! Small named hedgegraphs with hand-checkable measures.

use crate::graph::{Hedge, Hedgegraph, Hyperedge};

fn named(vertices: &str, hedges: &[(&str, &[&str])]) -> Hedgegraph {
    let names: Vec<String> = vertices.split_whitespace().map(str::to_string).collect();
    let index = |t: &str| names.iter().position(|n| n == t).expect("fixture vertex");
    let hedges = hedges
        .iter()
        .map(|(name, parts)| {
            let hyperedges = parts
                .iter()
                .map(|p| Hyperedge::from_indices(p.split_whitespace().map(index)).expect("nonempty"))
                .collect();
            Hedge::unit(*name, hyperedges)
        })
        .collect();
    Hedgegraph::new(names.clone(), hedges).expect("valid fixture")
}

/// Six vertices, three hedges with two hyperedges each.
pub fn three_hedges() -> Hedgegraph {
    named(
        "A B C D E F",
        &[
            ("e1", &["A B C", "D E F"]),
            ("e2", &["B D", "E F"]),
            ("e3", &["C E", "B D"]),
        ],
    )
}

/// Two hedges on four vertices whose cut function is not submodular.
pub fn crossed_pairs() -> Hedgegraph {
    named("A B C D", &[("e1", &["A B", "C D"]), ("e2", &["A C", "B D"])])
}

/// Five hedges where `{e1,e2,e3,e4}` trims to a spanning tree and `{e1,e2,e3,e5}` is dependent.
pub fn trimming_example() -> Hedgegraph {
    named(
        "A B C D E",
        &[
            ("e1", &["A E", "B C"]),
            ("e2", &["A B"]),
            ("e3", &["C E"]),
            ("e4", &["C D E"]),
            ("e5", &["B E"]),
        ],
    )
}

/// Three hedges that admit a rooted 1-out orientation but not a 2-out one.
pub fn orientation_example() -> Hedgegraph {
    named(
        "A B C D",
        &[("e1", &["A C D"]), ("e2", &["A B", "C D"]), ("e3", &["B D"])],
    )
}

/// Hypergraph with weak partition connectivity 2 and functional strength 3.
pub fn wpc_separation() -> Hedgegraph {
    named(
        "A B C D",
        &[
            ("e1", &["A B"]),
            ("e2", &["A C D"]),
            ("e3", &["A C D"]),
            ("e4", &["B C D"]),
            ("e5", &["B C D"]),
        ],
    )
}

/// One hedge containing every vertex.
pub fn single_spanning_hedge(n: usize) -> Hedgegraph {
    Hedgegraph::from_index_hedges(n, vec![vec![(0..n).collect()]]).expect("valid")
}

/// `n − 1` parallel hedges, each the whole vertex set.
pub fn parallel_spanning(n: usize) -> Hedgegraph {
    Hedgegraph::from_index_hedges(n, vec![vec![(0..n).collect()]; n.saturating_sub(1)]).expect("valid")
}

/// The triangle graph.
pub fn triangle() -> Hedgegraph {
    Hedgegraph::from_index_hedges(3, vec![vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]]).expect("valid")
}

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Hedgegraph {
    let hedges = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![vec![i, j]])).collect();
    Hedgegraph::from_index_hedges(n, hedges).expect("valid")
}

/// The path `0 – 1 – … – n−1` as a graph.
pub fn path(n: usize) -> Hedgegraph {
    let hedges = (1..n).map(|i| vec![vec![i - 1, i]]).collect();
    Hedgegraph::from_index_hedges(n, hedges).expect("valid")
}

/// `t` disjoint-id copies of every hedge of `g`.
pub fn replicate(g: &Hedgegraph, t: usize) -> Hedgegraph {
    let mut hedges = Vec::with_capacity(g.hedge_count() * t);
    for copy in 0..t {
        for h in g.hedges() {
            hedges.push(Hedge::new(format!("{}#{copy}", h.name), h.hyperedges().to_vec(), h.weight));
        }
    }
    Hedgegraph::new(g.vertex_names().to_vec(), hedges).expect("valid")
}

#[cfg(test)]
pub(crate) fn arb_hedgegraph(max_n: usize, max_m: usize) -> impl proptest::strategy::Strategy<Value = Hedgegraph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(move |n| {
        // Each hedge is a vertex labelling: label 0 means "absent", equal labels share a hyperedge.
        let hedge = proptest::collection::vec(0usize..4, n);
        proptest::collection::vec(hedge, 0..=max_m).prop_map(move |labellings| {
            let hedges = labellings
                .into_iter()
                .map(|labels| {
                    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); 3];
                    for (v, &l) in labels.iter().enumerate() {
                        if l > 0 {
                            parts[l - 1].push(v);
                        }
                    }
                    parts.retain(|p| !p.is_empty());
                    if parts.is_empty() {
                        parts.push(vec![0]);
                    }
                    parts
                })
                .collect();
            Hedgegraph::from_index_hedges(n, hedges).expect("valid")
        })
    })
}
