//! Vector-generation helpers for hypothesis-satisfying scenarios.
//!
//! Majorized partners come from adjacent Robin-Hood transfers toward the
//! mean; the weak variants add or subtract a common shift on top, so the
//! required relation holds by construction and the rejection loop in
//! `gen_scenario` only ever re-verifies.

use crate::majorize::{robin_hood_step, Cone};
use crate::rng::SplitMix64;

/// Parameter ranges for generated scenarios.
pub const ALPHA_RANGE: (f64, f64) = (0.05, 20.0);
pub const BETA_RANGE: (f64, f64) = (0.05, 2.0);
pub const LAMBDA_RANGE: (f64, f64) = (0.05, 20.0);
pub const SHOCK_RANGE: (f64, f64) = (0.2, 1.0);

pub fn sorted_vec(rng: &mut SplitMix64, n: usize, range: (f64, f64), cone: Cone) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.uniform(range.0, range.1)).collect();
    cone.arrange(&raw)
}

/// A vector majorized by `v`, in the same arrangement, with the same sum.
pub fn majorized_by(rng: &mut SplitMix64, v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    if v.len() < 2 {
        return out;
    }
    for _ in 0..=rng.below(3) {
        let idx = rng.below(v.len() - 1);
        let frac = rng.uniform(0.1, 0.9);
        robin_hood_step(&mut out, idx, frac);
    }
    out
}

/// A vector weakly supermajorized by `v` (`v >=^w out`): a majorized partner
/// shifted up by a common constant.
pub fn supermajorized_by(rng: &mut SplitMix64, v: &[f64]) -> Vec<f64> {
    let shift = if rng.flip() {
        rng.uniform(0.0, 0.5)
    } else {
        0.0
    };
    majorized_by(rng, v)
        .into_iter()
        .map(|x| x + shift)
        .collect()
}

/// A vector weakly submajorized by `v` (`v >=_w out`): a majorized partner
/// shifted down, kept above `floor`.
pub fn submajorized_by(rng: &mut SplitMix64, v: &[f64], floor: f64) -> Vec<f64> {
    let t = majorized_by(rng, v);
    let min = t.iter().cloned().fold(f64::MAX, f64::min);
    let max_shift = ((min - floor) * 0.8).max(0.0);
    let shift = if rng.flip() {
        rng.uniform(0.0, max_shift)
    } else {
        0.0
    };
    t.into_iter().map(|x| x - shift).collect()
}

/// Sorted-pointwise reciprocal domination: returns `w` in the same cone with
/// `1/v_(k) >= 1/w_(k)` for every sorted index, which implies the weak
/// submajorization `1/v >=_w 1/w` the reciprocal theorems hypothesise.
/// The unrestricted relation admits counterexamples, so generation stays in
/// this provably-valid subfamily.
pub fn reciprocal_dominated(rng: &mut SplitMix64, beta: &[f64], cone: Cone) -> Vec<f64> {
    let nu: Vec<f64> = beta.iter().map(|b| 1.0 / b).collect();
    let floor = 1.0 / BETA_RANGE.1;
    let shrunk: Vec<f64> = nu
        .iter()
        .map(|&v| {
            let cut = rng.uniform(0.0, 0.6 * (v - floor).max(0.0));
            v - cut
        })
        .collect();
    // re-sorting both keeps the pointwise domination per sorted index
    let arranged = cone.opposite().arrange(&shrunk);
    cone.arrange(&arranged.iter().map(|&v| 1.0 / v).collect::<Vec<_>>())
}

/// A fresh vector rescaled so its sum is at most `target_sum`.
pub fn sum_dominated(
    rng: &mut SplitMix64,
    n: usize,
    range: (f64, f64),
    target_sum: f64,
) -> Vec<f64> {
    let fresh: Vec<f64> = (0..n).map(|_| rng.uniform(range.0, range.1)).collect();
    let total: f64 = fresh.iter().sum();
    let ratio = rng.uniform(0.3, 1.0) * target_sum / total;
    let scale = ratio.min(1.0);
    fresh.into_iter().map(|x| x * scale).collect()
}

/// Two shock vectors ordered so `prod(a) >= prod(b)` (or `<=`).
pub fn product_ordered_shocks(
    rng: &mut SplitMix64,
    n: usize,
    a_dominates: bool,
) -> (Vec<f64>, Vec<f64>) {
    let draw = |rng: &mut SplitMix64| -> Vec<f64> {
        (0..n)
            .map(|_| rng.uniform(SHOCK_RANGE.0, SHOCK_RANGE.1))
            .collect()
    };
    let a = draw(rng);
    let b = draw(rng);
    let pa: f64 = a.iter().product();
    let pb: f64 = b.iter().product();
    if (pa >= pb) == a_dominates {
        (a, b)
    } else {
        (b, a)
    }
}

/// Multiple-outlier block split: two nonempty blocks summing to `n`.
pub fn block_split(rng: &mut SplitMix64, n: usize) -> (usize, usize) {
    let n1 = 1 + rng.below(n - 1);
    (n1, n - n1)
}

/// Expand block values into a full vector `(v1 x n1, v2 x n2)`.
pub fn expand_blocks(v1: f64, v2: f64, n1: usize, n2: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n1 + n2);
    out.extend(std::iter::repeat_n(v1, n1));
    out.extend(std::iter::repeat_n(v2, n2));
    out
}

/// Blockwise shrink toward the mean: `(v1', v2')` with the expanded vector
/// majorized by the original and the total preserved.
pub fn block_shrink(rng: &mut SplitMix64, v1: f64, v2: f64, n1: usize, n2: usize) -> (f64, f64) {
    let n = (n1 + n2) as f64;
    let s = rng.uniform(0.1, 0.9);
    let v1s = v1 + s * n2 as f64 * (v2 - v1) / n;
    let v2s = v2 - s * n1 as f64 * (v2 - v1) / n;
    (v1s, v2s)
}
