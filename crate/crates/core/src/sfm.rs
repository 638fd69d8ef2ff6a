//! Submodular function minimization.
//!
//! The main routine is the Fujishige–Wolfe minimum-norm-point method on the
//! base polytope. Oracles are integer valued, so a point `x` in the base
//! polytope certifies a set `S` as optimal once `F(S) − x⁻(V) < 1/2`.

use std::cell::Cell;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{HedgeId, Hedgegraph};
use crate::hedgeset::HedgeSet;
use crate::polymatroid::{f_unchecked, prefix_ranks};

/// An integer-valued set function on `0..ground_size`, assumed submodular.
pub trait SubmodularOracle {
    fn ground_size(&self) -> usize;

    fn evaluate(&self, set: &HedgeSet) -> i64;

    /// `out[i] = F(order[..i])` for `i` in `0..=order.len()`.
    fn evaluate_chain(&self, order: &[usize]) -> Vec<i64> {
        let mut set = HedgeSet::empty(self.ground_size());
        let mut out = Vec::with_capacity(order.len() + 1);
        out.push(self.evaluate(&set));
        for &i in order {
            set.insert(HedgeId(i));
            out.push(self.evaluate(&set));
        }
        out
    }

    /// Upper bound on `|F(S)|`, when known.
    fn declared_bound(&self) -> Option<i64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SfmMethod {
    MinNorm,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfmResult {
    pub minimizer: HedgeSet,
    pub value: i64,
    /// Oracle calls, counting each chain entry as one.
    pub evaluations: u64,
    pub method: SfmMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SfmError {
    #[error("oracle is not submodular: F(A)+F(B) < F(A∪B)+F(A∩B) for A={a:?}, B={b:?}")]
    NotSubmodular { a: HedgeSet, b: HedgeSet },
    #[error("minimum-norm point did not certify optimality and the ground set ({0}) is too large to sweep")]
    Unverified(usize),
}

/// Largest ground set the exhaustive fallback will sweep.
pub const EXHAUSTIVE_FALLBACK_LIMIT: usize = 16;

const NORM_TOL: f64 = 1e-9;
const WEIGHT_TOL: f64 = 1e-12;

struct Counting<'a, O: ?Sized> {
    inner: &'a O,
    calls: Cell<u64>,
}

impl<O: SubmodularOracle + ?Sized> Counting<'_, O> {
    fn evaluate(&self, set: &HedgeSet) -> i64 {
        self.calls.set(self.calls.get() + 1);
        self.inner.evaluate(set)
    }

    fn chain(&self, order: &[usize]) -> Vec<i64> {
        self.calls.set(self.calls.get() + order.len() as u64 + 1);
        self.inner.evaluate_chain(order)
    }
}

/// Minimizes over all `2^n` subsets; ties go to the smallest mask.
pub fn minimize_exhaustive<O: SubmodularOracle + ?Sized>(oracle: &O) -> SfmResult {
    let n = oracle.ground_size();
    assert!(n <= 30, "exhaustive sweep over {n} elements");
    let mut best = (i64::MAX, 0u64);
    let mut evaluations = 0;
    for mask in 0..1u64 << n {
        let v = oracle.evaluate(&HedgeSet::from_mask(n, mask));
        evaluations += 1;
        if v < best.0 {
            best = (v, mask);
        }
    }
    SfmResult {
        minimizer: HedgeSet::from_mask(n, best.1),
        value: best.0,
        evaluations,
        method: SfmMethod::Exhaustive,
    }
}

/// Samples random pairs and checks the submodular inequality on each.
pub fn check_submodular_sample<O: SubmodularOracle + ?Sized>(oracle: &O, pairs: usize, seed: u64) -> Result<(), SfmError> {
    let n = oracle.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let a = HedgeSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
        let b = HedgeSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
        let lhs = oracle.evaluate(&a) + oracle.evaluate(&b);
        let rhs = oracle.evaluate(&a.union(&b)) + oracle.evaluate(&a.intersection(&b));
        if lhs < rhs {
            return Err(SfmError::NotSubmodular { a, b });
        }
    }
    Ok(())
}

/// Exact minimizer via the minimum-norm point, with exhaustive fallback on small grounds.
pub fn minimize_submodular<O: SubmodularOracle + ?Sized>(oracle: &O) -> Result<SfmResult, SfmError> {
    if cfg!(debug_assertions) {
        check_submodular_sample(oracle, 8, 0x5eed)?;
    }
    let counting = Counting {
        inner: oracle,
        calls: Cell::new(0),
    };
    match min_norm_point(&counting) {
        Some((minimizer, value)) => Ok(SfmResult {
            minimizer,
            value,
            evaluations: counting.calls.get(),
            method: SfmMethod::MinNorm,
        }),
        None => {
            let n = oracle.ground_size();
            if n > EXHAUSTIVE_FALLBACK_LIMIT {
                return Err(SfmError::Unverified(n));
            }
            log::debug!("min-norm point unverified on {n} elements; sweeping");
            let mut res = minimize_exhaustive(oracle);
            res.evaluations += counting.calls.get();
            Ok(res)
        }
    }
}

/// Greedy vertex of the base polytope of `F − F(∅)` for `order`, plus the chain values.
fn greedy_vertex<O: SubmodularOracle + ?Sized>(oracle: &Counting<'_, O>, order: &[usize]) -> (DVector<f64>, Vec<i64>) {
    let chain = oracle.chain(order);
    let mut q = DVector::zeros(order.len());
    for (i, &e) in order.iter().enumerate() {
        q[e] = (chain[i + 1] - chain[i]) as f64;
    }
    (q, chain)
}

fn order_by(x: &DVector<f64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    order
}

/// Best prefix of the chain and whether `x` certifies it as a global minimum.
fn extract(chain: &[i64], x: &DVector<f64>) -> (usize, i64, bool) {
    let (len, &best) = chain
        .iter()
        .enumerate()
        .min_by_key(|&(i, &v)| (v, i))
        .expect("chain is nonempty");
    let negative: f64 = x.iter().map(|&v| v.min(0.0)).sum();
    let gap = (best - chain[0]) as f64 - negative;
    (len, best, gap < 0.5)
}

/// Minimum-norm point in the affine hull of `points`, as affine coefficients.
fn affine_minimizer(points: &[DVector<f64>]) -> Vec<f64> {
    let k = points.len();
    if k == 1 {
        return vec![1.0];
    }
    let n = points[0].len();
    let p1 = &points[0];
    let d = DMatrix::from_fn(n, k - 1, |r, c| points[c + 1][r] - p1[r]);
    let rhs = -p1;
    let svd = d.svd(true, true);
    let beta = svd
        .solve(&rhs, 1e-12)
        .unwrap_or_else(|_| DVector::zeros(k - 1));
    let mut alpha = Vec::with_capacity(k);
    alpha.push(1.0 - beta.sum());
    alpha.extend(beta.iter().copied());
    alpha
}

fn combine(points: &[DVector<f64>], weights: &[f64]) -> DVector<f64> {
    let mut x = DVector::zeros(points[0].len());
    for (p, &w) in points.iter().zip(weights) {
        x.axpy(w, p, 1.0);
    }
    x
}

fn min_norm_point<O: SubmodularOracle + ?Sized>(oracle: &Counting<'_, O>) -> Option<(HedgeSet, i64)> {
    let n = oracle.inner.ground_size();
    if n == 0 {
        let v = oracle.evaluate(&HedgeSet::empty(0));
        return Some((HedgeSet::empty(0), v));
    }
    let identity: Vec<usize> = (0..n).collect();
    let (first, _) = greedy_vertex(oracle, &identity);
    let mut points = vec![first];
    let mut lambda = vec![1.0];
    let mut x = points[0].clone();
    let max_major = 50 * n + 500;

    for _ in 0..max_major {
        let order = order_by(&x);
        let (q, chain) = greedy_vertex(oracle, &order);
        let (len, value, certified) = extract(&chain, &x);
        if certified {
            let set = HedgeSet::from_indices(n, order[..len].iter().copied());
            return Some((set, value));
        }
        let scale = points.iter().map(|p| p.norm_squared()).fold(q.norm_squared(), f64::max).max(1.0);
        if x.norm_squared() - x.dot(&q) <= NORM_TOL * scale {
            // x is the minimum-norm point up to tolerance but the gap did not close.
            return None;
        }
        if points.iter().any(|p| (p - &q).norm_squared() <= NORM_TOL * scale) {
            return None;
        }
        points.push(q);
        lambda.push(0.0);

        // Minor cycles: move toward the affine minimizer while it leaves the simplex.
        loop {
            let alpha = affine_minimizer(&points);
            if alpha.iter().all(|&a| a > WEIGHT_TOL) {
                x = combine(&points, &alpha);
                lambda = alpha;
                break;
            }
            let mut theta = 1.0f64;
            for (&l, &a) in lambda.iter().zip(&alpha) {
                if a <= WEIGHT_TOL && l - a > 0.0 {
                    theta = theta.min(l / (l - a));
                }
            }
            for (l, &a) in lambda.iter_mut().zip(&alpha) {
                *l = theta * a + (1.0 - theta) * *l;
            }
            let mut kept_points = Vec::with_capacity(points.len());
            let mut kept_lambda = Vec::with_capacity(points.len());
            for (p, &l) in points.iter().zip(&lambda) {
                if l > WEIGHT_TOL {
                    kept_points.push(p.clone());
                    kept_lambda.push(l);
                }
            }
            if kept_points.is_empty() {
                return None;
            }
            let total: f64 = kept_lambda.iter().sum();
            kept_lambda.iter_mut().for_each(|l| *l /= total);
            points = kept_points;
            lambda = kept_lambda;
            x = combine(&points, &lambda);
            if points.len() == 1 {
                break;
            }
        }
    }
    None
}

/// `c·f(A) + Σ_{e∈A} u_e` over a list of hedges of a hedgegraph.
///
/// Ground element `i` stands for hedge `ground[i]`. Submodular whenever `c ≥ 0`.
#[derive(Debug, Clone)]
pub struct HedgeObjective<'g> {
    graph: &'g Hedgegraph,
    ground: Vec<HedgeId>,
    rank_coeff: i64,
    modular: Vec<i64>,
}

impl<'g> HedgeObjective<'g> {
    pub fn new(graph: &'g Hedgegraph, ground: Vec<HedgeId>, rank_coeff: i64, modular: Vec<i64>) -> Self {
        assert_eq!(ground.len(), modular.len());
        assert!(rank_coeff >= 0, "negative rank coefficient breaks submodularity");
        Self {
            graph,
            ground,
            rank_coeff,
            modular,
        }
    }

    /// Objective over every hedge of `graph`.
    pub fn over_all(graph: &'g Hedgegraph, rank_coeff: i64, modular: Vec<i64>) -> Self {
        Self::new(graph, graph.hedge_ids().collect(), rank_coeff, modular)
    }

    pub fn ground(&self) -> &[HedgeId] {
        &self.ground
    }

    /// Maps a ground-index set back to hedge ids of the graph.
    pub fn to_hedges(&self, set: &HedgeSet) -> HedgeSet {
        HedgeSet::from_ids(self.graph.hedge_count(), set.iter().map(|i| self.ground[i.0]))
    }
}

impl SubmodularOracle for HedgeObjective<'_> {
    fn ground_size(&self) -> usize {
        self.ground.len()
    }

    fn evaluate(&self, set: &HedgeSet) -> i64 {
        let hedges = self.to_hedges(set);
        let f = f_unchecked(self.graph, &hedges) as i64;
        self.rank_coeff * f + set.iter().map(|i| self.modular[i.0]).sum::<i64>()
    }

    fn evaluate_chain(&self, order: &[usize]) -> Vec<i64> {
        let hedges: Vec<HedgeId> = order.iter().map(|&i| self.ground[i]).collect();
        let ranks = prefix_ranks(self.graph, &hedges);
        let mut modular = 0;
        let mut out = Vec::with_capacity(order.len() + 1);
        out.push(0);
        for (k, &i) in order.iter().enumerate() {
            modular += self.modular[i];
            out.push(self.rank_coeff * ranks[k + 1] as i64 + modular);
        }
        out
    }

    fn declared_bound(&self) -> Option<i64> {
        let n = self.graph.vertex_count() as i64;
        Some(self.rank_coeff * n + self.modular.iter().map(|u| u.abs()).sum::<i64>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    struct Cardinality(usize);

    impl SubmodularOracle for Cardinality {
        fn ground_size(&self) -> usize {
            self.0
        }
        fn evaluate(&self, set: &HedgeSet) -> i64 {
            set.len() as i64
        }
    }

    /// Concave of cardinality plus a modular term.
    struct Concave {
        n: usize,
        u: Vec<i64>,
    }

    impl SubmodularOracle for Concave {
        fn ground_size(&self) -> usize {
            self.n
        }
        fn evaluate(&self, set: &HedgeSet) -> i64 {
            let k = set.len() as i64;
            k * (2 * self.n as i64 - k) + set.iter().map(|i| self.u[i.0]).sum::<i64>()
        }
    }

    struct Broken;

    impl SubmodularOracle for Broken {
        fn ground_size(&self) -> usize {
            4
        }
        fn evaluate(&self, set: &HedgeSet) -> i64 {
            (set.len() * set.len()) as i64
        }
    }

    #[test]
    fn cardinality_is_minimized_by_empty_set() {
        let res = minimize_submodular(&Cardinality(6)).unwrap();
        assert_eq!(res.value, 0);
        assert!(res.minimizer.is_empty());
        assert_eq!(res.method, SfmMethod::MinNorm);
    }

    #[test]
    fn rank_minus_cardinality_on_crossed_pairs() {
        let g = fixtures::crossed_pairs();
        let obj = HedgeObjective::over_all(&g, 1, vec![-1; 2]);
        let res = minimize_submodular(&obj).unwrap();
        assert_eq!(res.value, 0);
        assert!(res.minimizer.is_empty());
        assert_eq!(minimize_exhaustive(&obj).value, 0);
    }

    #[test]
    fn chain_fast_path_matches_direct_evaluation() {
        let g = fixtures::trimming_example();
        let obj = HedgeObjective::over_all(&g, 3, vec![-2, 1, -4, 0, -1]);
        let order = [3, 0, 4, 1, 2];
        let fast = obj.evaluate_chain(&order);
        let mut set = HedgeSet::empty(5);
        let mut slow = vec![obj.evaluate(&set)];
        for i in order {
            set.insert(HedgeId(i));
            slow.push(obj.evaluate(&set));
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn restricted_ground_maps_back() {
        let g = fixtures::trimming_example();
        let obj = HedgeObjective::new(&g, vec![HedgeId(0), HedgeId(1), HedgeId(2), HedgeId(4)], 1, vec![-1; 4]);
        let res = minimize_submodular(&obj).unwrap();
        assert_eq!(res.value, -1);
        assert_eq!(obj.to_hedges(&res.minimizer).len(), 4);
    }

    #[test]
    fn detects_supermodular_oracle() {
        if cfg!(debug_assertions) {
            assert!(matches!(minimize_submodular(&Broken), Err(SfmError::NotSubmodular { .. })));
        }
        assert!(check_submodular_sample(&Broken, 64, 1).is_err());
    }

    #[test]
    fn empty_ground() {
        let res = minimize_submodular(&Cardinality(0)).unwrap();
        assert_eq!(res.value, 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_sweep_on_concave(u in proptest::collection::vec(-30i64..30, 1..12)) {
            let oracle = Concave { n: u.len(), u };
            let exact = minimize_exhaustive(&oracle);
            let res = minimize_submodular(&oracle).unwrap();
            prop_assert_eq!(res.value, exact.value);
            prop_assert_eq!(oracle.evaluate(&res.minimizer), res.value);
        }

        #[test]
        fn agrees_with_sweep_on_hedge_objectives(
            g in fixtures::arb_hedgegraph(7, 10),
            c in 0i64..4,
            u in proptest::collection::vec(-6i64..3, 10),
        ) {
            let m = g.hedge_count();
            let obj = HedgeObjective::over_all(&g, c, u[..m].to_vec());
            let res = minimize_submodular(&obj).unwrap();
            prop_assert_eq!(res.value, minimize_exhaustive(&obj).value);
            prop_assert_eq!(obj.evaluate(&res.minimizer), res.value);
        }
    }
}
