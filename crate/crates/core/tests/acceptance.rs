//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use hedgegraph::fixtures;
use hedgegraph::generate::{random_hedgegraph, random_hedgegraph_with, GeneratorParams};
use hedgegraph::matroid::{is_independent, min_cover_number, pack_bases, PackingOutcome};
use hedgegraph::measures::{approx_connectivity, is_connected, packing_number, partition_connectivity};
use hedgegraph::oracle::{
    enumerate_quotients, exact_connectivity, exact_kstar, exact_pc, exact_wpc, partition_capacity, quotients_by_span,
    OracleLimits,
};
use hedgegraph::orientation::{orient, verify_orientation, OrientOutcome};
use hedgegraph::rational::rational_to_f64;
use hedgegraph::sfm::{minimize_exhaustive, minimize_submodular, HedgeObjective, SfmMethod};
use hedgegraph::stochastic::{
    base_sampling_experiment, connectivity_sampling_experiment, sparsify_partitions, sparsify_partitions_with,
    verify_sparsifier, SparsifierResult,
};
use hedgegraph::strength::min_ratio;
use hedgegraph::{cut_hedges, internal_hedges, partition_boundary, HedgeSet, Hedgegraph, Partition, Rational, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 300;
const CORPUS_SEED: u64 = 0x4ed6e;

const LIMITS: OracleLimits = OracleLimits {
    max_vertices: 12,
    max_hedges: 20,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&[Hedgegraph]) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)*));
        }
    };
}

/// Random hedgegraphs with `n ≤ 7`, `m ≤ 8`, hyperedges of size `≤ 4`, `≤ 3` hyperedges per hedge.
fn corpus() -> Vec<Hedgegraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let params = GeneratorParams::default();
    (0..CORPUS_SIZE).map(|_| random_hedgegraph(&mut rng, &params)).collect()
}

fn unit(g: &Hedgegraph) -> Vec<Rational> {
    vec![Rational::from(1); g.hedge_count()]
}

fn names(g: &Hedgegraph, s: &str) -> Vec<VertexId> {
    s.split_whitespace().map(|v| g.vertex_by_name(v).unwrap()).collect()
}

fn crossed_pair_cuts(_: &[Hedgegraph]) -> Outcome {
    let g = fixtures::crossed_pairs();
    let d = |s: &str| cut_hedges(&g, &names(&g, s)).unwrap().len();
    let (ab, ac, a, abc) = (d("A B"), d("A C"), d("A"), d("A B C"));
    ensure!((ab, ac, a, abc) == (1, 1, 2, 2), "d values {:?}", (ab, ac, a, abc));
    // {A,B} ∩ {A,C} = {A} and {A,B} ∪ {A,C} = {A,B,C}.
    ensure!(ab + ac < a + abc, "submodularity holds unexpectedly");
    Ok(format!("d(AB)={ab} d(AC)={ac} d(A)={a} d(ABC)={abc}, {} < {}", ab + ac, a + abc))
}

fn triple(g: &Hedgegraph) -> (usize, usize, usize) {
    (
        exact_pc(g, &LIMITS).unwrap().value,
        exact_wpc(g, &LIMITS).unwrap().value,
        exact_connectivity(g, &LIMITS).unwrap().value,
    )
}

fn named_trio(_: &[Hedgegraph]) -> Outcome {
    for n in 3..=8 {
        let g = fixtures::single_spanning_hedge(n);
        ensure!(triple(&g) == (0, 1, 1), "single hedge n={n}: {:?}", triple(&g));
        ensure!(partition_connectivity(&g).unwrap().exact_value() == Some(0), "measure PC on single hedge n={n}");
    }
    for n in 4..=8 {
        let g = fixtures::parallel_spanning(n);
        ensure!(triple(&g) == (1, n - 1, n - 1), "parallel n={n}: {:?}", triple(&g));
    }
    let c3 = fixtures::triangle();
    ensure!(triple(&c3) == (1, 1, 2), "triangle: {:?}", triple(&c3));
    Ok("single hedge (0,1,1) n=3..8; parallel (1,n-1,n-1) n=4..8; triangle (1,1,2)".into())
}

fn wpc_below_strength(_: &[Hedgegraph]) -> Outcome {
    let g = fixtures::wpc_separation();
    let wpc = exact_wpc(&g, &LIMITS).unwrap().value;
    let ks = exact_kstar(&g, &LIMITS).unwrap();
    let kstar = ks.floor().unwrap();
    ensure!(wpc == 2 && kstar == 3, "WPC {wpc}, k* {kstar}");
    ensure!((wpc as u64) < kstar, "no separation");
    Ok(format!("WPC = {wpc} < k* = {kstar} (ratio {})", ks.ratio))
}

fn pc_three_ways(corpus: &[Hedgegraph]) -> Outcome {
    for (i, g) in corpus.iter().enumerate() {
        let oracle = exact_pc(g, &LIMITS).unwrap().value as u64;
        let report = partition_connectivity(g).unwrap();
        let packed = packing_number(g).unwrap();
        ensure!(
            report.exact_value() == Some(oracle) && packed == oracle && report.methods_agree == Some(true),
            "graph {i}: newton {:?}, packing {packed}, oracle {oracle}",
            report.exact_value()
        );
    }
    Ok(format!("{} graphs, zero disagreements", corpus.len()))
}

/// Smallest `k` with `|E[𝒫]| ≤ k(n − |𝒫|)` for every partition, or `None` if none exists.
fn cover_oracle(g: &Hedgegraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut k = 1;
    for p in Partition::enumerate(n) {
        let inside = internal_hedges(g, &p).unwrap().len();
        let slack = n - p.block_count();
        if slack == 0 {
            if inside > 0 {
                return None;
            }
            continue;
        }
        k = k.max(inside.div_ceil(slack));
    }
    Some(k)
}

fn constructive_checks(corpus: &[Hedgegraph]) -> Outcome {
    let mut packings = 0;
    for (i, g) in corpus.iter().enumerate() {
        let n = g.vertex_count();
        let pc = exact_pc(g, &LIMITS).unwrap().value;
        if pc >= 1 {
            let PackingOutcome::Packed { bases, trimmings, .. } = pack_bases(g, pc).unwrap() else {
                return Err(format!("graph {i}: packing {pc} failed"));
            };
            ensure!(bases.len() == pc, "graph {i}: {} bases", bases.len());
            let mut seen = g.no_hedges();
            for (b, t) in bases.iter().zip(&trimmings) {
                ensure!(seen.is_disjoint(b), "graph {i}: overlapping bases");
                seen = seen.union(b);
                ensure!(t.is_valid_for(g) && t.is_spanning_tree(n), "graph {i}: trimming is not a spanning tree");
                ensure!(t.hedges(g.hedge_count()).is_subset(b), "graph {i}: trimming leaves its base");
            }
            packings += 1;
        }
        match pack_bases(g, pc + 1).unwrap() {
            PackingOutcome::Certificate(p) => {
                let d = partition_boundary(g, &p).unwrap().len();
                ensure!(d < (pc + 1) * (p.block_count() - 1), "graph {i}: certificate does not violate");
            }
            PackingOutcome::Packed { .. } => return Err(format!("graph {i}: packed {} > PC", pc + 1)),
        }
        let cover = min_cover_number(g).ok().map(|c| c.k);
        ensure!(cover == cover_oracle(g), "graph {i}: cover {cover:?} vs oracle {:?}", cover_oracle(g));
    }
    Ok(format!("{} graphs, {packings} with PC ≥ 1 packed", corpus.len()))
}

fn orientations(corpus: &[Hedgegraph]) -> Outcome {
    let g = fixtures::orientation_example();
    let a = g.vertex_by_name("A").unwrap();
    let OrientOutcome::Oriented(o) = orient(&g, 1, a).unwrap() else {
        return Err("orientation example has no 1-out orientation".into());
    };
    ensure!(verify_orientation(&g, &o, 1, a, &LIMITS).unwrap().valid, "k=1 rejected");
    let check = verify_orientation(&g, &o, 2, a, &LIMITS).unwrap();
    let u = check.violating.clone().unwrap_or_default();
    ensure!(
        !check.valid && (u == names(&g, "A B D") || u == names(&g, "A C D")),
        "k=2 check {check:?}"
    );
    let mut checked = 0;
    for (i, g) in corpus.iter().enumerate() {
        let pc = exact_pc(g, &LIMITS).unwrap().value;
        for k in 1..=pc {
            for r in 0..g.vertex_count() {
                let root = VertexId(r);
                let OrientOutcome::Oriented(o) = orient(g, k, root).unwrap() else {
                    return Err(format!("graph {i}: no orientation at k={k}"));
                };
                ensure!(verify_orientation(g, &o, k, root, &LIMITS).unwrap().valid, "graph {i}, k={k}, root {r}");
                checked += 1;
            }
        }
    }
    let shown: Vec<&str> = u.iter().map(|&v| g.vertex_name(v)).collect();
    Ok(format!("{checked} (graph, k, root) orientations verified; example fails k=2 at {{{}}}", shown.join(",")))
}

fn sandwich(corpus: &[Hedgegraph]) -> Outcome {
    let mut disconnected = 0;
    for (i, g) in corpus.iter().enumerate() {
        let (pc, wpc, lambda) = triple(g);
        ensure!(lambda / 2 <= wpc && pc <= wpc, "graph {i}: PC {pc}, WPC {wpc}, λ {lambda}");
        if is_connected(g) {
            let kstar = exact_kstar(g, &LIMITS).unwrap().floor().unwrap() as usize;
            ensure!(wpc <= kstar && kstar <= lambda, "graph {i}: WPC {wpc}, k* {kstar}, λ {lambda}");
        } else {
            disconnected += 1;
            ensure!(lambda == 0 && wpc == 0, "graph {i}: disconnected with λ {lambda}");
        }
        let (lo, hi) = approx_connectivity(g, &LIMITS).unwrap().band();
        ensure!(lo <= lambda as u64 && lambda as u64 <= hi, "graph {i}: λ {lambda} outside [{lo}, {hi}]");
    }
    Ok(format!("{} graphs ({disconnected} disconnected, where k* is not compared)", corpus.len()))
}

fn sfm_agreement(_: &[Hedgegraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x5f);
    let params = GeneratorParams::default();
    for i in 0..200 {
        let n = rng.random_range(2..=7);
        let m = rng.random_range(1..=14);
        let g = random_hedgegraph_with(&mut rng, n, m, &params);
        let coeff = rng.random_range(1..=12);
        let modular = (0..m).map(|_| rng.random_range(-15..=5)).collect();
        let objective = HedgeObjective::over_all(&g, coeff, modular);
        let fast = minimize_submodular(&objective).map_err(|e| format!("objective {i}: {e}"))?;
        let slow = minimize_exhaustive(&objective);
        ensure!(fast.method == SfmMethod::MinNorm, "objective {i} fell back to {:?}", fast.method);
        ensure!(fast.value == slow.value, "objective {i}: {} vs {}", fast.value, slow.value);
    }
    Ok("200 objectives, ground ≤ 14, min-norm equals exhaustive".into())
}

fn sampling_experiments(_: &[Hedgegraph]) -> Outcome {
    let base = fixtures::complete_graph(8);
    let copies = 22;
    let g = fixtures::replicate(&base, copies);
    let conn = connectivity_sampling_experiment(&g, 2000, 0, &LIMITS).unwrap();
    let lambda = conn.lambda.unwrap();
    ensure!(lambda >= 150 && conn.p < 1.0, "λ {lambda}, p {}", conn.p);
    let floor = 1.0 - 2.0 / 8.0 - 3.0 * (0.25f64 / 2000.0).sqrt();
    ensure!(conn.frequency >= floor, "connectivity frequency {} < {floor:.3}", conn.frequency);
    // Copies of a hedge never split an optimal set, so κ₁ scales with the copy count.
    let kappa = min_ratio(&base, &unit(&base)).unwrap().value.finite().unwrap();
    let kstar = (kappa * Rational::from(copies as i128)).floor().to_integer() as u64;
    let bases = base_sampling_experiment(&g, Some(kstar), 2000, 1, &LIMITS).unwrap();
    ensure!(bases.p < 1.0, "base sampling p saturated");
    ensure!(bases.within_guarantee(), "base frequency {} vs {}", bases.frequency, bases.guarantee);
    Ok(format!(
        "λ={lambda} p={:.3} freq={:.4} ≥ {floor:.3}; k*={kstar} p={:.3} freq={:.4} ≥ {:.3}",
        conn.p,
        conn.frequency,
        bases.p,
        bases.frequency,
        bases.guarantee - 3.0 * bases.sigma
    ))
}

fn sparsifier_instances() -> Vec<(&'static str, Hedgegraph)> {
    vec![
        ("three_hedges", fixtures::three_hedges()),
        ("wpc_separation", fixtures::wpc_separation()),
        ("orientation", fixtures::orientation_example()),
        ("triangle", fixtures::triangle()),
        ("complete5", fixtures::complete_graph(5)),
        ("trimming x2", fixtures::replicate(&fixtures::trimming_example(), 2)),
        ("complete4 x3", fixtures::replicate(&fixtures::complete_graph(4), 3)),
    ]
}

/// Mean `d_{w′}(𝒫)` over `runs` within 3σ of `d_w(𝒫)` for every partition, unit weights.
fn unbiased(g: &Hedgegraph, runs: &[SparsifierResult]) -> Result<(), String> {
    let w = unit(g);
    let probs = &runs[0].probabilities;
    for p in Partition::enumerate(g.vertex_count()).filter(|p| p.block_count() > 1) {
        let d = rational_to_f64(&partition_capacity(g, &p, &w));
        let mean = runs.iter().map(|r| rational_to_f64(&partition_capacity(g, &p, &r.weights))).sum::<f64>()
            / runs.len() as f64;
        let var: f64 = partition_boundary(g, &p)
            .unwrap()
            .iter()
            .map(|e| {
                let q = rational_to_f64(&probs[e.0]);
                if q > 0.0 { (1.0 - q) / q } else { 0.0 }
            })
            .sum();
        let sigma = (var / runs.len() as f64).sqrt();
        ensure!((mean - d).abs() <= 3.0 * sigma + 1e-9, "partition {:?}: mean {mean:.4}, d {d}, σ {sigma:.4}", p.labels());
    }
    Ok(())
}

fn sparsifier(_: &[Hedgegraph]) -> Outcome {
    let eps = Rational::new(1, 2);
    let mut lines = Vec::new();
    let mut sampled = 0;
    for (name, g) in sparsifier_instances() {
        let w = unit(&g);
        let runs: Vec<SparsifierResult> = (0..50).map(|s| sparsify_partitions(&g, &w, eps, s).unwrap()).collect();
        let passed = runs
            .iter()
            .filter(|r| verify_sparsifier(&g, &w, &r.weights, eps, &LIMITS).unwrap().passed)
            .count();
        ensure!(passed * 10 >= runs.len() * 9, "{name}: {passed}/50 seeds pass");
        ensure!(runs.iter().all(|r| r.support as u64 <= r.support_bound), "{name}: support above bound");
        unbiased(&g, &runs).map_err(|e| format!("{name} at default c0: {e}"))?;
        // A small constant forces genuine sampling.
        let low: Vec<SparsifierResult> =
            (0..200).map(|s| sparsify_partitions_with(&g, &w, eps, 0.05, s).unwrap()).collect();
        if low[0].probabilities.iter().any(|p| *p < Rational::from(1)) {
            sampled += 1;
        }
        unbiased(&g, &low).map_err(|e| format!("{name} at c0=0.05: {e}"))?;
        lines.push(format!("{name} {passed}/50"));
    }
    ensure!(sampled >= 3, "only {sampled} instances sample below p = 1");
    Ok(format!("{}; unbiased at c0=50 and c0=0.05 ({sampled} instances sampled)", lines.join(", ")))
}

fn quotients_equal_boundaries(corpus: &[Hedgegraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x9);
    let wide = GeneratorParams {
        max_hedges: 10,
        ..GeneratorParams::default()
    };
    let extra: Vec<Hedgegraph> = (0..60).map(|_| random_hedgegraph(&mut rng, &wide)).collect();
    let mut count = 0;
    for (i, g) in corpus.iter().chain(&extra).enumerate() {
        if g.hedge_count() > 10 {
            continue;
        }
        let by_partition = enumerate_quotients(g, &LIMITS).unwrap();
        let by_span: BTreeSet<HedgeSet> = quotients_by_span(g, &LIMITS).unwrap();
        ensure!(by_partition == by_span, "graph {i}: {} vs {} quotients", by_partition.len(), by_span.len());
        count += 1;
    }
    Ok(format!("{count} graphs with m ≤ 10, exact set equality"))
}

fn matroid_axioms(_: &[Hedgegraph]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x12);
    let small = GeneratorParams {
        min_vertices: 1,
        max_vertices: 5,
        max_hedges: 6,
        ..GeneratorParams::default()
    };
    let mut pairs = 0usize;
    for i in 0..200 {
        let g = random_hedgegraph(&mut rng, &small);
        let m = g.hedge_count();
        let indep: Vec<bool> = (0..1u64 << m)
            .map(|mask| is_independent(&g, &HedgeSet::from_mask(m, mask)).unwrap().is_independent())
            .collect();
        ensure!(indep[0], "graph {i}: empty set dependent");
        for a in 0..1u64 << m {
            if !indep[a as usize] {
                continue;
            }
            for e in 0..m {
                if a >> e & 1 == 1 {
                    ensure!(indep[(a & !(1 << e)) as usize], "graph {i}: hereditary fails at {a:b} minus {e}");
                }
            }
            for b in 0..1u64 << m {
                if indep[b as usize] && b.count_ones() > a.count_ones() {
                    pairs += 1;
                    let grows = (0..m).any(|e| b >> e & 1 == 1 && a >> e & 1 == 0 && indep[(a | 1 << e) as usize]);
                    ensure!(grows, "graph {i}: augmentation fails for {a:b} and {b:b}");
                }
            }
        }
    }
    Ok(format!("200 graphs (n ≤ 5, m ≤ 6), {pairs} augmentation pairs, zero violations"))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: [Criterion; 12] = [
        ("crossed-pair cut values", crossed_pair_cuts),
        ("named trio (PC, WPC, λ)", named_trio),
        ("WPC strictly below k*", wpc_below_strength),
        ("PC three-way agreement", pc_three_ways),
        ("packing, certificates, cover number", constructive_checks),
        ("rooted k-out orientations", orientations),
        ("connectivity sandwich", sandwich),
        ("min-norm SFM vs exhaustive", sfm_agreement),
        ("sampling experiments", sampling_experiments),
        ("partition sparsifier", sparsifier),
        ("quotients equal boundaries", quotients_equal_boundaries),
        ("matroid axioms", matroid_axioms),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&corpus);
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} [{ms} ms]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {title}: {detail} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
