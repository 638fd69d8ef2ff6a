use std::path::PathBuf;

use hedgegraph::format::parse_with_warnings;
use hedgegraph::generate::{random_hedgegraph, GeneratorParams};
use hedgegraph::{fixtures, parse_hedgegraph, serialize_hedgegraph, Hedgegraph, ParseError, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn load(name: &str) -> Hedgegraph {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    parse_hedgegraph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fixture_files_match_builders() {
    assert_eq!(load("three_hedges.hg"), fixtures::three_hedges());
    assert_eq!(load("crossed_pairs.hg"), fixtures::crossed_pairs());
    assert_eq!(load("trimming.hg"), fixtures::trimming_example());
    assert_eq!(load("orientation.hg"), fixtures::orientation_example());
    assert_eq!(load("wpc_separation.hg"), fixtures::wpc_separation());
}

#[test]
fn three_hedges_sizes() {
    let g = load("three_hedges.hg");
    assert_eq!((g.vertex_count(), g.hedge_count(), g.size()), (6, 3, 14));
}

#[test]
fn weights_survive_round_trip() {
    let g = load("weighted.hg");
    assert_eq!(g.weights(), vec![Rational::new(1, 4), Rational::from(3), Rational::from(1)]);
    let text = serialize_hedgegraph(&g);
    assert!(text.contains("hedge p weight 0.25 : u v ; w x"), "{text}");
    assert_eq!(parse_hedgegraph(&text).unwrap(), g);
}

#[test]
fn overlapping_hyperedges_merge() {
    let g = parse_hedgegraph("vertices A B C\nhedge x : A B ; B C\n").unwrap();
    assert_eq!(g.hedge(hedgegraph::HedgeId(0)).hyperedges().len(), 1);
    assert_eq!(g.hedge(hedgegraph::HedgeId(0)).hyperedges()[0].len(), 3);
}

#[test]
fn minimal_input_warns_on_singleton() {
    let parsed = parse_with_warnings("vertices A\nhedge h : A\n").unwrap();
    assert_eq!((parsed.graph.vertex_count(), parsed.graph.hedge_count()), (1, 1));
    assert_eq!(parsed.warnings.len(), 1);
}

#[test]
fn errors_carry_line_numbers() {
    let cases = [
        ("vertices A A\n", 1),
        ("vertices A B\nhedge h : A B\nhedge h : A\n", 3),
        ("vertices A B\n\nhedge h : A Z\n", 3),
        ("vertices A B\nhedge h :\n", 2),
        ("vertices A B\nhedge h weight -1 : A B\n", 2),
        ("hedge h : A\n", 1),
    ];
    for (text, line) in cases {
        let err: ParseError = parse_hedgegraph(text).unwrap_err();
        assert_eq!(err.line(), Some(line), "{text:?}: {err}");
    }
    assert!(matches!(parse_hedgegraph("vertices A B\nhedge h weight -1 : A B\n"), Err(ParseError::NegativeWeight { .. })));
    assert!(matches!(parse_hedgegraph("vertices A B\nhedge h : A\nhedge h : B\n"), Err(ParseError::DuplicateHedge { .. })));
}

proptest! {
    #[test]
    fn serializer_round_trips(seed in any::<u64>()) {
        let g = random_hedgegraph(&mut ChaCha8Rng::seed_from_u64(seed), &GeneratorParams::default());
        let text = serialize_hedgegraph(&g);
        let back = parse_hedgegraph(&text).unwrap();
        prop_assert_eq!(serialize_hedgegraph(&back), text);
        prop_assert_eq!(back, g);
    }
}
