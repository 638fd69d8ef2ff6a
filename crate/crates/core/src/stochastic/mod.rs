//! Seeded randomized experiments: hedge sampling, base sampling, sparsification.
//!
//! Every random draw comes from a ChaCha8 substream keyed by `(seed, index)`,
//! so a trial's outcome depends only on the seed and its own index.

mod sparsifier;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{GraphError, Hedgegraph};
use crate::hedgeset::HedgeSet;
use crate::measures::is_connected;
use crate::oracle::{enumerate_quotients, exact_connectivity, exact_kstar, OracleError, OracleLimits};
use crate::polymatroid::f_unchecked;
use crate::rational::{ExtRational, Rational};
use crate::strength::{min_ratio, StrengthError};

pub use sparsifier::{
    sparsify_partitions, sparsify_partitions_with, strength_decomposition, support_bound, verify_sparsifier,
    SparsifierCheck, SparsifierResult, DEFAULT_C0,
};

/// Master seed plus substream derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeededRng {
    seed: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator for substream `index`; draws never depend on call order.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StochasticError {
    #[error("probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("epsilon {0} is outside (0, 1)")]
    Epsilon(String),
    #[error("threshold t = {0} is below 1")]
    Threshold(String),
    #[error("sparsifier constant must be positive, got {0}")]
    Constant(f64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("hedgegraph is disconnected")]
    Disconnected,
    #[error("weights need {0} entries")]
    WeightCount(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Strength(#[from] StrengthError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Keeps each hedge independently with probability `p`.
pub fn sample_subhedgegraph<R: Rng + ?Sized>(g: &Hedgegraph, p: f64, rng: &mut R) -> Result<HedgeSet, StochasticError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(StochasticError::Probability(p));
    }
    Ok(HedgeSet::from_ids(g.hedge_count(), g.hedge_ids().filter(|_| rng.random_bool(p))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    /// `connectivity` keeps a spanning connected subgraph; `base` keeps `f(S) = f(E)`.
    pub kind: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
    pub p: f64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kstar: Option<u64>,
    /// Guaranteed success probability at this `p`, when `p < 1`.
    pub guarantee: f64,
    /// One standard deviation of a Bernoulli(1/2) mean over `trials`.
    pub sigma: f64,
}

impl ExperimentReport {
    /// `frequency ≥ guarantee − 3σ`.
    pub fn within_guarantee(&self) -> bool {
        self.frequency >= self.guarantee - 3.0 * self.sigma
    }
}

fn run_trials(
    g: &Hedgegraph,
    p: f64,
    trials: usize,
    seed: u64,
    target: usize,
) -> Result<usize, StochasticError> {
    let rng = SeededRng::new(seed);
    let mut successes = 0;
    for t in 0..trials {
        let s = sample_subhedgegraph(g, p, &mut rng.stream(t as u64))?;
        if f_unchecked(g, &s) == target {
            successes += 1;
        }
    }
    Ok(successes)
}

fn check_experiment(g: &Hedgegraph, trials: usize) -> Result<(), StochasticError> {
    if trials == 0 {
        return Err(StochasticError::NoTrials);
    }
    if g.vertex_count() < 2 {
        return Err(StochasticError::TooFewVertices(g.vertex_count()));
    }
    if !is_connected(g) {
        return Err(StochasticError::Disconnected);
    }
    Ok(())
}

/// Samples hedges at `p = min(1, 20·ln n / λ)` and counts connected outcomes.
pub fn connectivity_sampling_experiment(
    g: &Hedgegraph,
    trials: usize,
    seed: u64,
    limits: &OracleLimits,
) -> Result<ExperimentReport, StochasticError> {
    check_experiment(g, trials)?;
    let n = g.vertex_count();
    let lambda = exact_connectivity(g, limits)?.value as u64;
    let p = (20.0 * (n as f64).ln() / lambda as f64).min(1.0);
    let successes = run_trials(g, p, trials, seed, n - 1)?;
    Ok(ExperimentReport {
        kind: "connectivity",
        seed,
        trials,
        successes,
        frequency: successes as f64 / trials as f64,
        p,
        n,
        lambda: Some(lambda),
        kstar: None,
        guarantee: if p < 1.0 { 1.0 - 2.0 / n as f64 } else { 1.0 },
        sigma: (0.25 / trials as f64).sqrt(),
    })
}

/// `⌊κ₁(f)⌋` from the subset sweep when it fits, else from discrete Newton.
pub fn kstar_value(g: &Hedgegraph, limits: &OracleLimits) -> Result<u64, StochasticError> {
    let ratio = match exact_kstar(g, limits) {
        Ok(exact) => exact.ratio,
        Err(_) => min_ratio(g, &vec![Rational::from(1); g.hedge_count()])?.value,
    };
    Ok(ratio.floor().map_or(u64::MAX, |v| v as u64))
}

/// Samples hedges at `p = min(1, 10·ln f(E) / k*)` and counts outcomes spanning `f`.
///
/// `kstar` defaults to [`kstar_value`].
pub fn base_sampling_experiment(
    g: &Hedgegraph,
    kstar: Option<u64>,
    trials: usize,
    seed: u64,
    limits: &OracleLimits,
) -> Result<ExperimentReport, StochasticError> {
    check_experiment(g, trials)?;
    let kstar = match kstar {
        Some(k) => k,
        None => kstar_value(g, limits)?,
    };
    let f_full = f_unchecked(g, &g.all_hedges());
    let p = (10.0 * (f_full as f64).ln() / kstar as f64).min(1.0);
    let successes = run_trials(g, p, trials, seed, f_full)?;
    Ok(ExperimentReport {
        kind: "base",
        seed,
        trials,
        successes,
        frequency: successes as f64 / trials as f64,
        p,
        n: g.vertex_count(),
        lambda: None,
        kstar: Some(kstar),
        guarantee: if p < 1.0 { 1.0 - 1.0 / f_full as f64 } else { 1.0 },
        sigma: (0.25 / trials as f64).sqrt(),
    })
}

/// Number of quotients `Q` with `w(Q) ≤ t·κ_w(f)`.
pub fn count_small_quotients(
    g: &Hedgegraph,
    weights: &[Rational],
    t: Rational,
    limits: &OracleLimits,
) -> Result<usize, StochasticError> {
    if t < Rational::from(1) {
        return Err(StochasticError::Threshold(t.to_string()));
    }
    if weights.len() != g.hedge_count() {
        return Err(StochasticError::WeightCount(g.hedge_count()));
    }
    let quotients = enumerate_quotients(g, limits)?;
    let kappa = min_ratio(g, weights)?.value;
    Ok(quotients
        .iter()
        .filter(|q| match kappa {
            ExtRational::Infinite => true,
            ExtRational::Finite(k) => q.iter().map(|e| weights[e.0]).sum::<Rational>() <= t * k,
        })
        .count())
}
