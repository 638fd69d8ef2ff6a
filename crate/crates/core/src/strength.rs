//! Exact `w`-strength by discrete Newton, and independence via SFM.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::graph::{HedgeId, Hedgegraph};
use crate::hedgeset::HedgeSet;
use crate::polymatroid::f_unchecked;
use crate::rational::{ExtRational, Rational};
use crate::sfm::{minimize_submodular, HedgeObjective, SfmError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioResult {
    /// `κ_w` over the ground set, `Infinite` when `f(ground) = 0`.
    pub value: ExtRational,
    /// Witness `A ⊆ ground` with `f(A) < f(ground)` attaining the value.
    pub argmin: HedgeSet,
    /// Newton steps, each one submodular minimization.
    pub iterations: usize,
    /// The strictly decreasing sequence of ratios visited.
    pub trajectory: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrengthError {
    #[error("hedge {0} has negative weight")]
    NegativeWeight(usize),
    #[error("weights need {0} entries")]
    WeightCount(usize),
    #[error("scaled objective overflows 64-bit integers")]
    Overflow,
    #[error(transparent)]
    Sfm(#[from] SfmError),
}

fn weight_sum(weights: &[Rational], ids: impl Iterator<Item = HedgeId>) -> Rational {
    ids.fold(Rational::zero(), |acc, e| acc + weights[e.0])
}

/// `κ_w` of the hedgegraph polymatroid restricted to `ground`.
///
/// `weights` is indexed by hedge id over the whole graph.
pub fn min_ratio_on(g: &Hedgegraph, ground: &HedgeSet, weights: &[Rational]) -> Result<RatioResult, StrengthError> {
    if weights.len() != g.hedge_count() {
        return Err(StrengthError::WeightCount(g.hedge_count()));
    }
    if let Some(e) = ground.iter().find(|e| weights[e.0].is_negative()) {
        return Err(StrengthError::NegativeWeight(e.0));
    }
    let ids = ground.ids();
    let f_full = f_unchecked(g, ground) as i128;
    let w_full = weight_sum(weights, ids.iter().copied());
    if f_full == 0 {
        return Ok(RatioResult {
            value: ExtRational::Infinite,
            argmin: HedgeSet::empty(g.hedge_count()),
            iterations: 0,
            trajectory: Vec::new(),
        });
    }

    // Integer weights W = D·w.
    let denom = ids.iter().fold(1i128, |acc, e| acc.lcm(weights[e.0].denom()));
    let scaled: Vec<i128> = ids
        .iter()
        .map(|e| (weights[e.0] * Rational::from(denom)).to_integer())
        .collect();
    let to_i64 = |v: i128| v.to_i64().ok_or(StrengthError::Overflow);

    let mut alpha = w_full / Rational::from(f_full);
    let mut argmin = HedgeSet::empty(g.hedge_count());
    let mut trajectory = vec![alpha];
    let mut iterations = 0;
    loop {
        iterations += 1;
        // α·f(A) − w(A) scaled by d·D where α = c/d.
        let (c, d) = (*alpha.numer(), *alpha.denom());
        let rank_coeff = to_i64(c.checked_mul(denom).ok_or(StrengthError::Overflow)?)?;
        let modular = scaled
            .iter()
            .map(|&w| d.checked_mul(w).ok_or(StrengthError::Overflow).and_then(|v| to_i64(-v)))
            .collect::<Result<Vec<i64>, _>>()?;
        let objective = HedgeObjective::new(g, ids.clone(), rank_coeff, modular);
        let res = minimize_submodular(&objective)?;
        let full_value = i128::from(rank_coeff) * f_full - d * scaled.iter().sum::<i128>();
        if i128::from(res.value) >= full_value {
            break;
        }
        let a = objective.to_hedges(&res.minimizer);
        let fa = f_unchecked(g, &a) as i128;
        debug_assert!(fa < f_full);
        let ratio = (w_full - weight_sum(weights, a.iter())) / Rational::from(f_full - fa);
        debug_assert!(ratio < alpha);
        alpha = ratio;
        argmin = a;
        trajectory.push(alpha);
    }
    Ok(RatioResult {
        value: ExtRational::Finite(alpha),
        argmin,
        iterations,
        trajectory,
    })
}

/// `κ_w(f) = min_A (w(E) − w(A)) / (f(E) − f(A))` over the whole hedge set.
pub fn min_ratio(g: &Hedgegraph, weights: &[Rational]) -> Result<RatioResult, StrengthError> {
    min_ratio_on(g, &g.all_hedges(), weights)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfmIndependence {
    pub independent: bool,
    /// When dependent, `B ⊆ A` with `|B| > f(B)`.
    pub certificate: Option<HedgeSet>,
}

/// Decides independence by minimizing `f(B) − |B|` over `B ⊆ A`.
pub fn matroid_independence_via_sfm(g: &Hedgegraph, a: &HedgeSet) -> Result<SfmIndependence, SfmError> {
    let ids = a.ids();
    let objective = HedgeObjective::new(g, ids.clone(), 1, vec![-1; ids.len()]);
    let res = minimize_submodular(&objective)?;
    Ok(if res.value < 0 {
        SfmIndependence {
            independent: false,
            certificate: Some(objective.to_hedges(&res.minimizer)),
        }
    } else {
        SfmIndependence {
            independent: true,
            certificate: None,
        }
    })
}
