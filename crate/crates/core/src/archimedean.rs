//! Archimedean generator pairs and the structural predicates the dependent
//! theorems hypothesise: log-convexity of the generator, d-monotonicity, and
//! super-additivity of `phi2 ∘ psi1` together with its consequence, pointwise
//! copula dominance.
//!
//! Built-in families:
//!   independence      psi(t) = e^{-t}
//!   clayton           psi(t) = (1 + theta·t)^{-1/theta},  theta > 0
//!   gumbel-hougaard   psi(t) = exp(-t^{1/theta}),         theta >= 1
//!
//! `u` arguments are clamped to `[1e-300, 1]` before the inverse; an infinite
//! `sum(phi)` maps to `psi(inf) = 0`, so grounded copula values come out as an
//! exact 0 instead of NaN.

use std::fmt;
use std::sync::Arc;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Lower clamp applied to copula arguments before the inverse generator.
pub const U_FLOOR: f64 = 1e-300;

/// Absolute and relative tolerance for predicate verdicts; a violation must
/// exceed ten times this to be declared rather than INCONCLUSIVE.
pub const PRED_TOL: f64 = 1e-9;
pub const VIOLATION_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("clayton requires theta > 0, got {0}")]
    ClaytonTheta(f64),
    #[error("gumbel-hougaard requires theta >= 1, got {0}")]
    GumbelTheta(f64),
    #[error("unknown generator family {0:?}")]
    UnknownFamily(String),
    #[error("custom generators cannot be serialized")]
    CustomNotSerializable,
}

/// User-supplied generator pair; both directions must be provided (no generic
/// numeric inversion, so inversion error cannot leak into predicate budgets).
pub struct CustomGenerator {
    pub name: String,
    pub psi: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub phi: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomGenerator")
            .field("name", &self.name)
            .finish()
    }
}

/// An Archimedean generator `psi` with right-continuous inverse `phi`.
#[derive(Debug, Clone)]
pub enum Generator {
    Independence,
    Clayton { theta: f64 },
    GumbelHougaard { theta: f64 },
    Custom(Arc<CustomGenerator>),
}

impl Generator {
    pub fn clayton(theta: f64) -> Result<Self, GeneratorError> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(GeneratorError::ClaytonTheta(theta));
        }
        Ok(Generator::Clayton { theta })
    }

    pub fn gumbel_hougaard(theta: f64) -> Result<Self, GeneratorError> {
        if !(theta >= 1.0) || !theta.is_finite() {
            return Err(GeneratorError::GumbelTheta(theta));
        }
        Ok(Generator::GumbelHougaard { theta })
    }

    pub fn custom(
        name: impl Into<String>,
        psi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Generator::Custom(Arc::new(CustomGenerator {
            name: name.into(),
            psi: Box::new(psi),
            phi: Box::new(phi),
        }))
    }

    /// Stable identifier used for memoising predicate verdicts.
    pub fn key(&self) -> String {
        match self {
            Generator::Independence => "independence".to_string(),
            Generator::Clayton { theta } => format!("clayton({theta})"),
            Generator::GumbelHougaard { theta } => format!("gumbel-hougaard({theta})"),
            Generator::Custom(c) => format!("custom({})", c.name),
        }
    }

    pub fn psi(&self, t: f64) -> f64 {
        if t.is_infinite() && t > 0.0 {
            return 0.0;
        }
        match self {
            Generator::Independence => (-t).exp(),
            Generator::Clayton { theta } => (1.0 + theta * t).powf(-1.0 / theta),
            Generator::GumbelHougaard { theta } => (-(t.powf(1.0 / theta))).exp(),
            Generator::Custom(c) => (c.psi)(t),
        }
    }

    /// Right-continuous inverse, with `u` clamped to `[U_FLOOR, 1]`.
    pub fn phi(&self, u: f64) -> f64 {
        let u = u.clamp(U_FLOOR, 1.0);
        match self {
            Generator::Independence => -u.ln(),
            Generator::Clayton { theta } => (u.powf(-theta) - 1.0) / theta,
            Generator::GumbelHougaard { theta } => (-u.ln()).powf(*theta),
            Generator::Custom(c) => (c.phi)(u),
        }
    }

    /// `C(u) = psi(sum phi(u_i))`; any `u_i <= 0` grounds the copula at 0.
    pub fn copula_value(&self, u: &[f64]) -> f64 {
        if u.iter().any(|&v| v <= 0.0) {
            return 0.0;
        }
        let sum: f64 = u.iter().map(|&v| self.phi(v)).sum();
        self.psi(sum)
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorRepr {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Generator::Independence => GeneratorRepr {
                family: "independence".into(),
                theta: None,
            },
            Generator::Clayton { theta } => GeneratorRepr {
                family: "clayton".into(),
                theta: Some(*theta),
            },
            Generator::GumbelHougaard { theta } => GeneratorRepr {
                family: "gumbel-hougaard".into(),
                theta: Some(*theta),
            },
            Generator::Custom(_) => {
                return Err(serde::ser::Error::custom(
                    GeneratorError::CustomNotSerializable,
                ))
            }
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GeneratorRepr::deserialize(d)?;
        match repr.family.as_str() {
            "independence" => Ok(Generator::Independence),
            "clayton" => {
                Generator::clayton(repr.theta.unwrap_or(f64::NAN)).map_err(DeError::custom)
            }
            "gumbel-hougaard" | "gumbel" => {
                Generator::gumbel_hougaard(repr.theta.unwrap_or(f64::NAN)).map_err(DeError::custom)
            }
            other => Err(DeError::custom(GeneratorError::UnknownFamily(
                other.to_string(),
            ))),
        }
    }
}

/// Log-spaced evaluation grid for the structural predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredicateGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

impl Default for PredicateGrid {
    fn default() -> Self {
        PredicateGrid {
            t_min: 1e-6,
            t_max: 50.0,
            points: 200,
        }
    }
}

impl PredicateGrid {
    pub fn values(&self) -> Vec<f64> {
        let (a, b) = (self.t_min.ln(), self.t_max.ln());
        (0..self.points)
            .map(|i| (a + (b - a) * i as f64 / (self.points - 1) as f64).exp())
            .collect()
    }
}

/// Outcome of a grid predicate. `Violated` requires the margin to exceed
/// `VIOLATION_FACTOR` times the tolerance; smaller margins are inconclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PredicateVerdict {
    Holds,
    Violated { witness: PredicateWitness },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateWitness {
    pub at: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

impl PredicateVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PredicateVerdict::Holds)
    }
}

/// Three-way classification shared by the predicates: worst violation within
/// tolerance passes, beyond 10x declares, in between stays inconclusive.
fn classify(worst: Option<(f64, f64, PredicateWitness)>) -> PredicateVerdict {
    match worst {
        None => PredicateVerdict::Holds,
        Some((margin, tol, witness)) => {
            if margin <= tol {
                PredicateVerdict::Holds
            } else if margin > VIOLATION_FACTOR * tol {
                PredicateVerdict::Violated { witness }
            } else {
                PredicateVerdict::Inconclusive {
                    reason: format!("violation {margin:.3e} within 10x of tolerance {tol:.3e}"),
                }
            }
        }
    }
}

fn worst_of(
    acc: Option<(f64, f64, PredicateWitness)>,
    margin: f64,
    tol: f64,
    witness: impl FnOnce() -> PredicateWitness,
) -> Option<(f64, f64, PredicateWitness)> {
    if margin > 0.0 && acc.as_ref().is_none_or(|(m, _, _)| margin > *m) {
        Some((margin, tol, witness()))
    } else {
        acc
    }
}

/// Convexity of `log psi` via slope monotonicity on the grid.
pub fn is_log_convex(g: &Generator, grid: &PredicateGrid) -> PredicateVerdict {
    let ts = grid.values();
    let mut logs = Vec::with_capacity(ts.len());
    for &t in &ts {
        let v = g.psi(t);
        if !(v > 0.0) || !v.is_finite() {
            return PredicateVerdict::Inconclusive {
                reason: format!("psi({t}) = {v} is not positive"),
            };
        }
        logs.push(v.ln());
    }
    let mut worst = None;
    let mut prev_slope: Option<(f64, f64)> = None;
    for i in 0..ts.len() - 1 {
        let slope = (logs[i + 1] - logs[i]) / (ts[i + 1] - ts[i]);
        if let Some((ps, pt)) = prev_slope {
            let tol = PRED_TOL + PRED_TOL * ps.abs().max(slope.abs());
            worst = worst_of(worst, ps - slope, tol, || PredicateWitness {
                at: vec![pt, ts[i + 1]],
                lhs: ps,
                rhs: slope,
            });
        }
        prev_slope = Some((slope, ts[i]));
    }
    classify(worst)
}

/// Central-difference estimate of the k-th derivative of `f` at `t`.
fn central_derivative<F: Fn(f64) -> f64>(f: &F, t: f64, k: usize, h: f64) -> f64 {
    // sum_j (-1)^j C(k,j) f(t + (k/2 - j) h) / h^k
    let mut acc = 0.0;
    let mut binom = 1.0_f64;
    for j in 0..=k {
        let offset = (k as f64 / 2.0 - j as f64) * h;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * f(t + offset);
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    acc / h.powi(k as i32)
}

/// d-monotonicity probe: the signed derivatives `(-1)^k psi^(k)` for
/// `k = 0..d-2` must be nonnegative, and the order-(d-2) one decreasing and
/// convex. Derivatives come from central differences, so the tolerance
/// scales with the rounding noise `eps / h^k`; when the observed violation
/// lands between that noise floor and ten times it, the verdict is
/// INCONCLUSIVE rather than a guess.
pub fn is_d_monotone(g: &Generator, d: usize, grid: &PredicateGrid) -> PredicateVerdict {
    if d < 2 {
        return PredicateVerdict::Inconclusive {
            reason: "d-monotonicity needs d >= 2".into(),
        };
    }
    let ts = grid.values();
    let f = |t: f64| g.psi(t.max(0.0));
    let mut worst = None;
    let top = d - 2;
    for k in 0..=top {
        let h = (f64::EPSILON.powf(1.0 / (k as f64 + 2.0)) * 0.5).max(1e-8);
        let noise = f64::EPSILON * 3f64.powi(k as i32) / h.powi(k as i32) + h * h;
        let tol = (PRED_TOL + 10.0 * noise).max(PRED_TOL);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for &t in &ts {
            if t < k as f64 * h {
                continue;
            }
            let est = sign * central_derivative(&f, t, k, h);
            if !est.is_finite() {
                return PredicateVerdict::Inconclusive {
                    reason: format!("derivative estimate of order {k} not finite at t={t}"),
                };
            }
            worst = worst_of(worst, -est, tol, || PredicateWitness {
                at: vec![t, k as f64],
                lhs: est,
                rhs: 0.0,
            });
        }
    }
    // order-(d-2) signed derivative must be decreasing and convex
    let k = top;
    let h = (f64::EPSILON.powf(1.0 / (k as f64 + 2.0)) * 0.5).max(1e-8);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let noise = f64::EPSILON * 3f64.powi(k as i32) / h.powi(k as i32) + h * h;
    let usable: Vec<(f64, f64)> = ts
        .iter()
        .filter(|&&t| t >= k as f64 * h)
        .map(|&t| (t, sign * central_derivative(&f, t, k, h)))
        .collect();
    let mut prev: Option<(f64, f64)> = None;
    let mut prev_slope: Option<(f64, f64)> = None;
    for &(t, v) in &usable {
        if let Some((pt, pv)) = prev {
            let tol = (PRED_TOL + 10.0 * noise) * (1.0 + pv.abs().max(v.abs()));
            worst = worst_of(worst, v - pv, tol, || PredicateWitness {
                at: vec![t],
                lhs: pv,
                rhs: v,
            });
            let slope = (v - pv) / (t - pt);
            if let Some((ps, pst)) = prev_slope {
                // convexity: slopes of the decreasing branch must not fall
                let tol = (PRED_TOL + 10.0 * noise / (t - pt)) * (1.0 + ps.abs().max(slope.abs()));
                worst = worst_of(worst, ps - slope, tol, || PredicateWitness {
                    at: vec![pst, t],
                    lhs: ps,
                    rhs: slope,
                });
            }
            prev_slope = Some((slope, t));
        }
        prev = Some((t, v));
    }
    classify(worst)
}

/// Super-additivity of `f = phi2 ∘ psi1` over a 2-D grid built from the
/// predicate grid's axis: `f(x+y) >= f(x) + f(y)`.
pub fn super_additive_compose(
    g1: &Generator,
    g2: &Generator,
    grid: &PredicateGrid,
) -> PredicateVerdict {
    let axis = grid.values();
    let f = |t: f64| g2.phi(g1.psi(t));
    let fs: Vec<f64> = axis.iter().map(|&t| f(t)).collect();
    let mut worst = None;
    for (i, &x) in axis.iter().enumerate() {
        for (j, &y) in axis.iter().enumerate() {
            if j < i {
                continue; // symmetric
            }
            let sum = f(x + y);
            let parts = fs[i] + fs[j];
            if sum.is_nan() || parts.is_nan() {
                return PredicateVerdict::Inconclusive {
                    reason: format!("composition not finite near ({x}, {y})"),
                };
            }
            if sum.is_infinite() {
                continue; // infinity dominates any finite sum of parts
            }
            let tol = PRED_TOL + PRED_TOL * sum.abs().max(parts.abs());
            worst = worst_of(worst, parts - sum, tol, || PredicateWitness {
                at: vec![x, y],
                lhs: sum,
                rhs: parts,
            });
        }
    }
    classify(worst)
}

/// Pointwise copula dominance `C_{psi1}(u) <= C_{psi2}(u)` over a lattice of
/// `per_axis^dim` points in the open unit cube.
pub fn copula_dominates(
    g1: &Generator,
    g2: &Generator,
    dim: usize,
    per_axis: usize,
) -> PredicateVerdict {
    let axis: Vec<f64> = (1..=per_axis)
        .map(|i| i as f64 / (per_axis as f64 + 1.0))
        .collect();
    let mut u = vec![0usize; dim];
    let mut worst = None;
    loop {
        let point: Vec<f64> = u.iter().map(|&i| axis[i]).collect();
        let c1 = g1.copula_value(&point);
        let c2 = g2.copula_value(&point);
        let tol = PRED_TOL + PRED_TOL * c1.abs().max(c2.abs());
        worst = worst_of(worst, c1 - c2, tol, || PredicateWitness {
            at: point.clone(),
            lhs: c1,
            rhs: c2,
        });
        // odometer over the lattice
        let mut carry = true;
        for slot in u.iter_mut() {
            *slot += 1;
            if *slot == per_axis {
                *slot = 0;
            } else {
                carry = false;
                break;
            }
        }
        if carry {
            break;
        }
    }
    classify(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let gens = [
            Generator::Independence,
            Generator::clayton(1.0).unwrap(),
            Generator::clayton(2.0).unwrap(),
            Generator::gumbel_hougaard(1.5).unwrap(),
        ];
        for g in &gens {
            for i in 0..100 {
                let t = 1e-6 * (50.0_f64 / 1e-6).powf(i as f64 / 99.0);
                assert!(
                    (g.phi(g.psi(t)) - t).abs() <= 1e-10 * (1.0 + t),
                    "{} t={t}",
                    g.key()
                );
            }
            for i in 0..50 {
                let u = 1e-8_f64.powf(1.0 - i as f64 / 49.0);
                assert!((g.psi(g.phi(u)) - u).abs() <= 1e-10, "{} u={u}", g.key());
            }
        }
    }

    #[test]
    fn copula_values() {
        let ind = Generator::Independence;
        assert!((ind.copula_value(&[0.5, 0.5]) - 0.25).abs() < 1e-15);
        assert_eq!(ind.copula_value(&[0.3, 0.0]), 0.0);
        assert_eq!(
            Generator::clayton(2.0)
                .unwrap()
                .copula_value(&[0.7, 0.0, 0.9]),
            0.0
        );
        // closed-form Clayton value 7^{-1/2}
        let c = Generator::clayton(2.0).unwrap().copula_value(&[0.5, 0.5]);
        assert!((c - 0.37796447300922722721).abs() < 1e-14);
        // gumbel theta = 1 is the independence generator
        let g = Generator::gumbel_hougaard(1.0).unwrap();
        assert!((g.copula_value(&[0.3, 0.8]) - 0.24).abs() < 1e-14);
    }

    #[test]
    fn independence_reduces_to_product() {
        let ind = Generator::Independence;
        let mut rng = crate::rng::SplitMix64::new(3);
        for _ in 0..100 {
            let n = 2 + rng.below(5);
            let u: Vec<f64> = (0..n).map(|_| rng.uniform(1e-4, 1.0)).collect();
            let prod: f64 = u.iter().product();
            assert!((ind.copula_value(&u) - prod).abs() <= 1e-12);
        }
    }

    #[test]
    fn log_convexity() {
        let grid = PredicateGrid::default();
        assert!(is_log_convex(&Generator::Independence, &grid).holds());
        assert!(is_log_convex(&Generator::clayton(2.0).unwrap(), &grid).holds());
        assert!(is_log_convex(&Generator::gumbel_hougaard(2.0).unwrap(), &grid).holds());
        // exp(-t^2) has concave log
        let g = Generator::custom("exp(-t^2)", |t| (-t * t).exp(), |u| (-u.ln()).sqrt());
        let grid5 = PredicateGrid {
            t_min: 1e-6,
            t_max: 5.0,
            points: 200,
        };
        match is_log_convex(&g, &grid5) {
            PredicateVerdict::Violated { witness } => {
                assert!(witness.lhs > witness.rhs);
            }
            v => panic!("expected Violated, got {v:?}"),
        }
    }

    #[test]
    fn d_monotonicity() {
        let grid = PredicateGrid::default();
        assert!(is_d_monotone(&Generator::Independence, 5, &grid).holds());
        assert!(is_d_monotone(&Generator::clayton(1.0).unwrap(), 3, &grid).holds());
        // kinked generator fails around t = 1
        let g = Generator::custom("max(0,1-t)", |t| (1.0 - t).max(0.0), |u| 1.0 - u);
        match is_d_monotone(&g, 3, &grid) {
            PredicateVerdict::Violated { witness } => {
                assert!(
                    witness.at[0] > 0.5 && witness.at[0] < 1.6,
                    "witness {:?}",
                    witness.at
                );
            }
            PredicateVerdict::Inconclusive { .. } => {}
            v => panic!("kink should not pass, got {v:?}"),
        }
    }

    #[test]
    fn super_additivity_of_compositions() {
        let grid = PredicateGrid::default();
        let c1 = Generator::clayton(1.0).unwrap();
        let c2 = Generator::clayton(2.0).unwrap();
        // identical generators compose to the identity
        assert!(super_additive_compose(&c1, &c1, &grid).holds());
        assert!(super_additive_compose(&c1, &c2, &grid).holds());
        match super_additive_compose(&c2, &c1, &grid) {
            PredicateVerdict::Violated { witness } => {
                assert!(witness.lhs < witness.rhs);
            }
            v => panic!("expected Violated, got {v:?}"),
        }
    }

    #[test]
    fn dominance_follows_super_additivity() {
        let c1 = Generator::clayton(1.0).unwrap();
        let c2 = Generator::clayton(2.0).unwrap();
        assert!(copula_dominates(&c1, &c1, 2, 20).holds());
        assert!(copula_dominates(&c1, &c2, 2, 50).holds());
        match copula_dominates(&c2, &c1, 2, 50) {
            PredicateVerdict::Violated { witness } => {
                assert!(witness.lhs > witness.rhs);
                assert_eq!(witness.at.len(), 2);
            }
            v => panic!("expected Violated, got {v:?}"),
        }
    }

    #[test]
    fn clayton_small_theta_approaches_independence() {
        let g = Generator::clayton(1e-6).unwrap();
        let ind = Generator::Independence;
        for i in 1..20 {
            for j in 1..20 {
                let u = [i as f64 / 20.0, j as f64 / 20.0];
                assert!((g.copula_value(&u) - ind.copula_value(&u)).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn serde_round_trip_builtin_only() {
        let g = Generator::clayton(2.0).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"family":"clayton","theta":2.0}"#);
        let back: Generator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let custom = Generator::custom("x", |t| (-t).exp(), |u| -u.ln());
        assert!(serde_json::to_string(&custom).is_err());
        assert!(serde_json::from_str::<Generator>(r#"{"family":"frank","theta":1.0}"#).is_err());
    }
}
