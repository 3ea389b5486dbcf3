//! Vector pre-orders used in the theorem hypotheses: majorization, its weak
//! super/sub variants, the positive monotone cones, and a sampling-based
//! Schur-convexity probe.
//!
//! Comparisons carry a `1e-12` absolute slack so float dust cannot flip a
//! hypothesis check; the probe demands a 10x margin before declaring a
//! function neither Schur-convex nor Schur-concave.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::EvalError;
use crate::rng::SplitMix64;

/// Slack for partial-sum inequalities and total-sum equality.
pub const SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("length mismatch: {left} vs {right}")]
pub struct LengthMismatch {
    pub left: usize,
    pub right: usize,
}

fn check_len(x: &[f64], y: &[f64]) -> Result<(), LengthMismatch> {
    if x.len() != y.len() || x.is_empty() {
        Err(LengthMismatch {
            left: x.len(),
            right: y.len(),
        })
    } else {
        Ok(())
    }
}

fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

fn sorted_asc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s
}

/// `x` majorizes `y`: decreasing-order partial sums of `x` dominate those of
/// `y` and the totals agree within `SUM_TOL`.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool, LengthMismatch> {
    check_len(x, y)?;
    let xs = sorted_desc(x);
    let ys = sorted_desc(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..xs.len() {
        sx += xs[i];
        sy += ys[i];
        if i + 1 < xs.len() && sx < sy - SUM_TOL {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= SUM_TOL)
}

/// `x` weakly supermajorizes `y` (increasing-order partial sums of `x` are
/// all at most those of `y`).
pub fn weak_supermajorizes(x: &[f64], y: &[f64]) -> Result<bool, LengthMismatch> {
    check_len(x, y)?;
    let xs = sorted_asc(x);
    let ys = sorted_asc(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..xs.len() {
        sx += xs[i];
        sy += ys[i];
        if sx > sy + SUM_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x` weakly submajorizes `y` (tail sums of the increasing arrangement of
/// `x` all dominate those of `y`).
pub fn weak_submajorizes(x: &[f64], y: &[f64]) -> Result<bool, LengthMismatch> {
    check_len(x, y)?;
    let xs = sorted_asc(x);
    let ys = sorted_asc(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in (0..xs.len()).rev() {
        sx += xs[i];
        sy += ys[i];
        if sx < sy - SUM_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Strictly positive entries, nonincreasing (ties allowed).
pub fn is_positive_decreasing(x: &[f64]) -> bool {
    !x.is_empty()
        && x.iter().all(|&v| v > 0.0 && v.is_finite())
        && x.windows(2).all(|w| w[0] >= w[1])
}

/// Strictly positive entries, nondecreasing (ties allowed).
pub fn is_positive_increasing(x: &[f64]) -> bool {
    !x.is_empty()
        && x.iter().all(|&v| v > 0.0 && v.is_finite())
        && x.windows(2).all(|w| w[0] <= w[1])
}

/// The two positive monotone cones the theorems quantify over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cone {
    /// positive, sorted nonincreasing
    Decreasing,
    /// positive, sorted nondecreasing
    Increasing,
}

impl Cone {
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Cone::Decreasing => is_positive_decreasing(x),
            Cone::Increasing => is_positive_increasing(x),
        }
    }

    pub fn opposite(&self) -> Cone {
        match self {
            Cone::Decreasing => Cone::Increasing,
            Cone::Increasing => Cone::Decreasing,
        }
    }

    /// Sort `v` into this cone's arrangement.
    pub fn arrange(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Cone::Decreasing => sorted_desc(v),
            Cone::Increasing => sorted_asc(v),
        }
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cone::Decreasing => write!(f, "decreasing"),
            Cone::Increasing => write!(f, "increasing"),
        }
    }
}

/// One adjacent Robin-Hood transfer toward the mean. Preserves the sum and
/// the sorted arrangement, and the result is majorized by the input.
pub fn robin_hood_step(v: &mut [f64], idx: usize, fraction: f64) {
    debug_assert!(idx + 1 < v.len());
    debug_assert!((0.0..=1.0).contains(&fraction));
    let gap = v[idx] - v[idx + 1];
    let d = fraction * gap / 2.0;
    v[idx] -= d;
    v[idx + 1] += d;
}

/// Verdict of the Schur probe.
#[derive(Debug, Clone, PartialEq)]
pub enum SchurVerdict {
    /// `x m> y` implies `f(x) >= f(y)` on every sampled pair.
    Convex,
    /// `x m> y` implies `f(x) <= f(y)` on every sampled pair.
    Concave,
    /// Constant on majorization classes (both directions hold).
    Both,
    /// Both directions fail by more than 10x the tolerance.
    Neither {
        witness: SchurWitness,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurWitness {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub fx: f64,
    pub fy: f64,
}

/// Numeric Schur-convexity probe: samples vectors in `cone` over
/// `range`, derives majorized partners by Robin-Hood transfers, and compares
/// `f` across each pair. A test utility, not a proof.
pub fn check_schur<F>(
    f: F,
    cone: Cone,
    dim: usize,
    range: (f64, f64),
    trials: usize,
    seed: u64,
) -> SchurVerdict
where
    F: Fn(&[f64]) -> Result<f64, EvalError>,
{
    let tol = 1e-9;
    let mut rng = SplitMix64::new(seed);
    let mut worst_convex: Option<(f64, SchurWitness)> = None; // f(x) < f(y)
    let mut worst_concave: Option<(f64, SchurWitness)> = None; // f(x) > f(y)
    for _ in 0..trials {
        let raw: Vec<f64> = (0..dim).map(|_| rng.uniform(range.0, range.1)).collect();
        let x = cone.arrange(&raw);
        let mut y = x.clone();
        for _ in 0..=rng.below(3) {
            if dim >= 2 {
                let idx = rng.below(dim - 1);
                let frac = rng.uniform(0.1, 0.9);
                robin_hood_step(&mut y, idx, frac);
            }
        }
        let (fx, fy) = match (f(&x), f(&y)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                return SchurVerdict::Inconclusive {
                    reason: "evaluation failed".into(),
                }
            }
        };
        let scale = 1.0 + fx.abs().max(fy.abs());
        let wit = || SchurWitness {
            x: x.clone(),
            y: y.clone(),
            fx,
            fy,
        };
        let convex_gap = fy - fx; // > 0 breaks convexity
        if convex_gap > tol * scale && worst_convex.as_ref().is_none_or(|(g, _)| convex_gap > *g) {
            worst_convex = Some((convex_gap, wit()));
        }
        let concave_gap = fx - fy;
        if concave_gap > tol * scale && worst_concave.as_ref().is_none_or(|(g, _)| concave_gap > *g)
        {
            worst_concave = Some((concave_gap, wit()));
        }
    }
    match (worst_convex, worst_concave) {
        (None, None) => SchurVerdict::Both,
        (None, Some(_)) => SchurVerdict::Convex,
        (Some(_), None) => SchurVerdict::Concave,
        (Some((gc, wc)), Some((gk, _))) => {
            // 10x margin required before declaring "neither"
            if gc > 10.0 * 1e-9 && gk > 10.0 * 1e-9 {
                SchurVerdict::Neither { witness: wc }
            } else {
                SchurVerdict::Inconclusive {
                    reason: format!("violations within the 10x margin: {gc:.3e}, {gk:.3e}"),
                }
            }
        }
    }
}
