//! Partition sparsification by strength-weighted importance sampling.
//!
//! Strengths come from repeatedly peeling `E ∖ A` off the current ground,
//! where `A` witnesses `κ_w` of the polymatroid restricted to that ground.
//! Across all classes `Σ_e w(e)/strength(e) = f(E)`, so the expected support
//! is at most `ρ·f(E)`.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::graph::Hedgegraph;
use crate::hedgeset::HedgeSet;
use crate::measures::is_connected;
use crate::oracle::OracleLimits;
use crate::partition::Partition;
use crate::polymatroid::boundary_unchecked;
use crate::rational::{serialize_rational, serialize_rationals, ExtRational, Rational};
use crate::strength::min_ratio_on;

use super::{SeededRng, StochasticError};

pub const DEFAULT_C0: f64 = 50.0;

/// `ρ` is rounded to this many binary digits so probabilities stay rational.
const RHO_BITS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsifierResult {
    /// `w′(e) = w(e)/p_e` for sampled hedges, else 0.
    #[serde(serialize_with = "serialize_rationals")]
    pub weights: Vec<Rational>,
    pub support: usize,
    /// `+∞` for hedges that cross no partition.
    pub strengths: Vec<ExtRational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub probabilities: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub rho: Rational,
    pub support_bound: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsifierCheck {
    pub passed: bool,
    /// `max_𝒫 |d′(𝒫) − d(𝒫)| / d(𝒫)`, infinite when `d(𝒫) = 0 < d′(𝒫)`.
    pub max_relative_error: ExtRational,
    pub worst: Option<Partition>,
}

/// Strength of every hedge; the first class removed carries `κ_w(f)`.
pub fn strength_decomposition(g: &Hedgegraph, weights: &[Rational]) -> Result<Vec<ExtRational>, StochasticError> {
    let mut strengths = vec![ExtRational::Infinite; g.hedge_count()];
    let mut ground = g.all_hedges();
    loop {
        let res = min_ratio_on(g, &ground, weights)?;
        if res.value.is_infinite() {
            return Ok(strengths);
        }
        for e in ground.difference(&res.argmin).iter() {
            strengths[e.0] = res.value;
        }
        ground = res.argmin;
    }
}

/// `⌈c₀·n·ln n / ε²⌉`.
pub fn support_bound(n: usize, epsilon: f64, c0: f64) -> u64 {
    let n = n as f64;
    (c0 * n * n.ln() / (epsilon * epsilon)).ceil() as u64
}

fn to_f64(r: &Rational) -> f64 {
    crate::rational::rational_to_f64(r)
}

pub fn sparsify_partitions(
    g: &Hedgegraph,
    weights: &[Rational],
    epsilon: Rational,
    seed: u64,
) -> Result<SparsifierResult, StochasticError> {
    sparsify_partitions_with(g, weights, epsilon, DEFAULT_C0, seed)
}

/// Keeps hedge `e` with `p_e = min(1, ρ·w(e)/strength(e))`, `ρ = c₀·ln n / ε²`.
pub fn sparsify_partitions_with(
    g: &Hedgegraph,
    weights: &[Rational],
    epsilon: Rational,
    c0: f64,
    seed: u64,
) -> Result<SparsifierResult, StochasticError> {
    if epsilon <= Rational::zero() || epsilon >= Rational::one() {
        return Err(StochasticError::Epsilon(epsilon.to_string()));
    }
    if !(c0 > 0.0 && c0.is_finite()) {
        return Err(StochasticError::Constant(c0));
    }
    if weights.len() != g.hedge_count() {
        return Err(StochasticError::WeightCount(g.hedge_count()));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(StochasticError::TooFewVertices(n));
    }
    if !is_connected(g) {
        return Err(StochasticError::Disconnected);
    }
    let strengths = strength_decomposition(g, weights)?;
    let eps = to_f64(&epsilon);
    let scale = 1i128 << RHO_BITS;
    let rho = Rational::new((c0 * (n as f64).ln() / (eps * eps) * scale as f64).round() as i128, scale);

    let mut rng = SeededRng::new(seed).stream(0);
    let mut probabilities = Vec::with_capacity(g.hedge_count());
    let mut sparse = Vec::with_capacity(g.hedge_count());
    for e in g.hedge_ids() {
        let w = weights[e.0];
        let p = match strengths[e.0] {
            _ if w.is_zero() => Rational::zero(),
            ExtRational::Infinite => Rational::zero(),
            ExtRational::Finite(s) if s.is_zero() => Rational::one(),
            ExtRational::Finite(s) => (rho * w / s).min(Rational::one()),
        };
        // Exact Bernoulli(p) from a uniform integer below the denominator.
        let keep = p.is_one() || (!p.is_zero() && rng.random_range(0..*p.denom()) < *p.numer());
        sparse.push(if keep { w / p } else { Rational::zero() });
        probabilities.push(p);
    }
    Ok(SparsifierResult {
        support: sparse.iter().filter(|w| !w.is_zero()).count(),
        weights: sparse,
        strengths,
        probabilities,
        rho,
        support_bound: support_bound(n, eps, c0),
        seed,
    })
}

/// Checks `(1−ε)·d_w(𝒫) ≤ d_{w′}(𝒫) ≤ (1+ε)·d_w(𝒫)` over every partition.
pub fn verify_sparsifier(
    g: &Hedgegraph,
    weights: &[Rational],
    sparse: &[Rational],
    epsilon: Rational,
    limits: &OracleLimits,
) -> Result<SparsifierCheck, StochasticError> {
    if weights.len() != g.hedge_count() || sparse.len() != g.hedge_count() {
        return Err(StochasticError::WeightCount(g.hedge_count()));
    }
    limits.check_vertices(g)?;
    let mut worst: Option<(ExtRational, Partition)> = None;
    for p in Partition::enumerate(g.vertex_count()) {
        let boundary: HedgeSet = boundary_unchecked(g, p.labels());
        let d: Rational = boundary.iter().map(|e| weights[e.0]).sum();
        let d2: Rational = boundary.iter().map(|e| sparse[e.0]).sum();
        let err = if d.is_zero() {
            if d2.is_zero() {
                ExtRational::Finite(Rational::zero())
            } else {
                ExtRational::Infinite
            }
        } else {
            ExtRational::Finite(((d2 - d) / d).abs())
        };
        if worst.as_ref().is_none_or(|(w, _)| err > *w) {
            worst = Some((err, p));
        }
    }
    let (max_relative_error, partition) = worst.expect("at least one partition");
    Ok(SparsifierCheck {
        passed: max_relative_error <= ExtRational::Finite(epsilon),
        max_relative_error,
        worst: (max_relative_error > ExtRational::Finite(Rational::zero())).then_some(partition),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{exact_pc, partition_capacity};
    use crate::strength::min_ratio;

    const L: OracleLimits = OracleLimits {
        max_vertices: 12,
        max_hedges: 20,
    };

    fn unit(g: &Hedgegraph) -> Vec<Rational> {
        vec![Rational::one(); g.hedge_count()]
    }

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn identity_when_rho_is_large() {
        let g = fixtures::three_hedges();
        let w = unit(&g);
        let res = sparsify_partitions(&g, &w, half(), 3).unwrap();
        assert!(res.probabilities.iter().all(|p| p.is_one()));
        assert_eq!(res.weights, w);
        let check = verify_sparsifier(&g, &w, &res.weights, half(), &L).unwrap();
        assert!(check.passed);
        assert_eq!(check.max_relative_error, ExtRational::Finite(Rational::zero()));
        assert_eq!(check.worst, None);
    }

    #[test]
    fn parallel_hedges_share_one_strength() {
        let g = fixtures::parallel_spanning(6);
        let kappa = min_ratio(&g, &unit(&g)).unwrap().value;
        assert_eq!(kappa, ExtRational::Finite(Rational::one()));
        assert!(strength_decomposition(&g, &unit(&g)).unwrap().iter().all(|s| *s == kappa));
    }

    #[test]
    fn strengths_cover_every_hedge_and_sum_to_rank() {
        for g in [fixtures::three_hedges(), fixtures::wpc_separation(), fixtures::trimming_example()] {
            let w = unit(&g);
            let s = strength_decomposition(&g, &w).unwrap();
            let kappa = min_ratio(&g, &w).unwrap().value;
            assert_eq!(s.iter().min(), Some(&kappa));
            let total: Rational = s.iter().filter_map(|x| x.finite()).map(|x| Rational::one() / x).sum();
            let f_full = crate::polymatroid::f_unchecked(&g, &g.all_hedges());
            assert_eq!(total, Rational::from(f_full as i128));
        }
    }

    #[test]
    fn perturbed_boundary_hedge_is_caught() {
        // The PC witness of a path is a bipartition cut by one edge.
        let g = fixtures::path(4);
        let w = unit(&g);
        let witness = exact_pc(&g, &L).unwrap().partition;
        let boundary = boundary_unchecked(&g, witness.labels());
        assert_eq!(boundary.len(), 1);
        let e = boundary.ids()[0];
        let mut bad = w.clone();
        bad[e.0] = Rational::one() + half() * Rational::from(2);
        let check = verify_sparsifier(&g, &w, &bad, half(), &L).unwrap();
        assert!(!check.passed);
        assert_eq!(check.max_relative_error, ExtRational::Finite(Rational::one()));
        let worst = check.worst.unwrap();
        assert!(boundary_unchecked(&g, worst.labels()).contains(e));
        let d = partition_capacity(&g, &worst, &w);
        assert_eq!(partition_capacity(&g, &worst, &bad) - d, d);
    }

    #[test]
    fn three_hedges_sparsifier_passes() {
        let g = fixtures::three_hedges();
        let w = unit(&g);
        let res = sparsify_partitions_with(&g, &w, half(), 0.2, 11).unwrap();
        assert_eq!(res, sparsify_partitions_with(&g, &w, half(), 0.2, 11).unwrap());
        assert!(verify_sparsifier(&g, &w, &res.weights, half(), &L).unwrap().passed);
    }

    #[test]
    fn small_constant_is_unbiased() {
        let g = fixtures::replicate(&fixtures::complete_graph(4), 3);
        let w = unit(&g);
        let runs = 300;
        let results: Vec<SparsifierResult> =
            (0..runs).map(|s| sparsify_partitions_with(&g, &w, half(), 0.05, s).unwrap()).collect();
        assert!(results[0].probabilities.iter().any(|p| *p < Rational::one()));
        for p in Partition::enumerate(4).filter(|p| p.block_count() > 1) {
            let d = crate::rational::rational_to_f64(&partition_capacity(&g, &p, &w));
            let mean = results
                .iter()
                .map(|r| crate::rational::rational_to_f64(&partition_capacity(&g, &p, &r.weights)))
                .sum::<f64>()
                / runs as f64;
            // Var d′ = Σ_{e∈δ(𝒫)} w(e)²·(1 − p_e)/p_e.
            let var: f64 = boundary_unchecked(&g, p.labels())
                .iter()
                .map(|e| {
                    let q = crate::rational::rational_to_f64(&results[0].probabilities[e.0]);
                    (1.0 - q) / q
                })
                .sum();
            let sigma = (var / runs as f64).sqrt();
            assert!((mean - d).abs() <= 3.0 * sigma + 1e-9, "{p:?}: mean {mean} vs {d}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = fixtures::triangle();
        let w = unit(&g);
        assert!(matches!(sparsify_partitions(&g, &w, Rational::one(), 0), Err(StochasticError::Epsilon(_))));
        assert!(matches!(sparsify_partitions_with(&g, &w, half(), 0.0, 0), Err(StochasticError::Constant(_))));
        let split = Hedgegraph::from_index_hedges(3, vec![vec![vec![0, 1]]]).unwrap();
        assert!(matches!(
            sparsify_partitions(&split, &unit(&split), half(), 0),
            Err(StochasticError::Disconnected)
        ));
        assert!(Rational::new(-1, 2).is_negative());
    }
}
