//! Closed-form curves for the sample minimum and maximum of a heterogeneous
//! GM population in three regimes:
//!
//!   independent   min survival  prod S_k        max cdf  prod F_k
//!   dependent     min survival  psi[sum phi(S_k)]   max cdf  psi[sum phi(F_k)]
//!   shock         min survival  (prod p_k)·prod S_k  max cdf  prod(1 - p_k S_k)
//!
//! The shocked extremes are mixed distributions with atoms at zero; the curve
//! object carries the atom explicitly and the order checkers treat `x = 0`
//! separately. Products are evaluated as exponentials of log sums so
//! populations of ~10^3 members survive.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::archimedean::Generator;
use crate::error::EvalError;
use crate::gm::GMParams;

/// Tail threshold used by the default grid-extent search.
pub const TAIL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PopError {
    #[error("population needs at least one member")]
    Empty,
    #[error("shock_p length {got} does not match member count {want}")]
    ShockLen { got: usize, want: usize },
    #[error("shock probabilities must lie in (0, 1], got {0}")]
    ShockRange(f64),
    #[error("shock_p and copula are mutually exclusive")]
    ShockAndCopula,
}

/// Which of the three model regimes a population lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Independent,
    Dependent,
    Shock,
}

/// One sample: `n` GM members plus either a copula (dependent regime) or
/// Bernoulli shock probabilities (shock regime), never both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPopulation")]
pub struct PopulationSpec {
    members: Vec<GMParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shock_p: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    copula: Option<Generator>,
}

#[derive(Deserialize)]
struct RawPopulation {
    members: Vec<GMParams>,
    #[serde(default)]
    shock_p: Option<Vec<f64>>,
    #[serde(default)]
    copula: Option<Generator>,
}

impl TryFrom<RawPopulation> for PopulationSpec {
    type Error = PopError;
    fn try_from(raw: RawPopulation) -> Result<Self, PopError> {
        PopulationSpec::build(raw.members, raw.shock_p, raw.copula)
    }
}

impl PopulationSpec {
    fn build(
        members: Vec<GMParams>,
        shock_p: Option<Vec<f64>>,
        copula: Option<Generator>,
    ) -> Result<Self, PopError> {
        if members.is_empty() {
            return Err(PopError::Empty);
        }
        if shock_p.is_some() && copula.is_some() {
            return Err(PopError::ShockAndCopula);
        }
        if let Some(p) = &shock_p {
            if p.len() != members.len() {
                return Err(PopError::ShockLen {
                    got: p.len(),
                    want: members.len(),
                });
            }
            if let Some(&bad) = p.iter().find(|&&v| !(v > 0.0 && v <= 1.0)) {
                return Err(PopError::ShockRange(bad));
            }
        }
        Ok(PopulationSpec {
            members,
            shock_p,
            copula,
        })
    }

    pub fn independent(members: Vec<GMParams>) -> Result<Self, PopError> {
        Self::build(members, None, None)
    }

    pub fn with_copula(members: Vec<GMParams>, copula: Generator) -> Result<Self, PopError> {
        Self::build(members, None, Some(copula))
    }

    pub fn with_shocks(members: Vec<GMParams>, shock_p: Vec<f64>) -> Result<Self, PopError> {
        Self::build(members, Some(shock_p), None)
    }

    pub fn members(&self) -> &[GMParams] {
        &self.members
    }

    pub fn shock_p(&self) -> Option<&[f64]> {
        self.shock_p.as_deref()
    }

    pub fn copula(&self) -> Option<&Generator> {
        self.copula.as_ref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn regime(&self) -> Regime {
        if self.copula.is_some() {
            Regime::Dependent
        } else if self.shock_p.is_some() {
            Regime::Shock
        } else {
            Regime::Independent
        }
    }

    fn shock_atom(&self) -> f64 {
        self.shock_p.as_deref().map_or(1.0, |p| p.iter().product())
    }

    /// Survival of the sample minimum. In the shock regime the value at 0 is
    /// the right limit `prod p_i` (the atom), matching the curve object.
    pub fn min_survival(&self, x: f64) -> Result<f64, EvalError> {
        match self.regime() {
            Regime::Dependent => {
                let g = self.copula.as_ref().unwrap();
                let mut sum = 0.0;
                for m in &self.members {
                    sum += g.phi(m.survival(x)?);
                }
                Ok(g.psi(sum))
            }
            _ => {
                let mut log_sum = 0.0;
                for m in &self.members {
                    log_sum += m.log_survival(x)?;
                }
                Ok(self.shock_atom() * log_sum.exp())
            }
        }
    }

    /// Hazard rate of the minimum, `sum_k (lambda_k + alpha_k e^{beta_k x})`.
    /// Defined for the independent regime only; the shocked minimum shares
    /// this hazard on `x > 0` but its atom is handled separately by callers.
    pub fn min_hazard(&self, x: f64) -> Result<f64, EvalError> {
        if self.regime() != Regime::Independent {
            return Err(EvalError::domain(
                "min_hazard requires the independent regime",
            ));
        }
        let mut sum = 0.0;
        for m in &self.members {
            sum += m.hazard(x)?;
        }
        Ok(sum)
    }

    /// Density of the minimum (independent regime): hazard times survival.
    pub fn min_density(&self, x: f64) -> Result<f64, EvalError> {
        if self.regime() != Regime::Independent {
            return Err(EvalError::domain(
                "min_density requires the independent regime",
            ));
        }
        Ok(self.min_hazard(x)? * self.min_survival(x)?)
    }

    /// Cdf of the sample maximum.
    pub fn max_cdf(&self, x: f64) -> Result<f64, EvalError> {
        match self.regime() {
            Regime::Dependent => {
                let g = self.copula.as_ref().unwrap();
                let mut sum = 0.0;
                for m in &self.members {
                    let f = m.cdf(x)?;
                    if f <= 0.0 {
                        return Ok(0.0);
                    }
                    sum += g.phi(f);
                }
                Ok(g.psi(sum))
            }
            Regime::Independent => {
                let mut log_sum = 0.0;
                for m in &self.members {
                    let f = m.cdf(x)?;
                    if f <= 0.0 {
                        return Ok(0.0);
                    }
                    log_sum += f.ln();
                }
                Ok(log_sum.exp())
            }
            Regime::Shock => {
                let p = self.shock_p.as_deref().unwrap();
                if x == 0.0 {
                    // survival factors are exactly 1 here; the atom mass is
                    // the plain product
                    return Ok(p.iter().map(|&pi| 1.0 - pi).product());
                }
                let mut log_sum = 0.0;
                for (m, &pi) in self.members.iter().zip(p) {
                    if pi == 1.0 {
                        // share the independent code path so p ≡ 1 is bit-exact
                        let f = m.cdf(x)?;
                        if f <= 0.0 {
                            return Ok(0.0);
                        }
                        log_sum += f.ln();
                        continue;
                    }
                    let s = m.survival(x)?;
                    log_sum += (-pi * s).ln_1p();
                }
                Ok(log_sum.exp())
            }
        }
    }

    /// Density of the maximum: analytic in the independent regime
    /// (`F_{n:n} · sum f_k / F_k`), five-point central differences of
    /// `max_cdf` otherwise, with an adaptive step kept inside `x > 0`.
    pub fn max_density(&self, x: f64) -> Result<f64, EvalError> {
        if !(x > 0.0) {
            return Err(EvalError::domain(format!(
                "max_density needs x > 0, got {x}"
            )));
        }
        match self.regime() {
            Regime::Independent => {
                let total = self.max_cdf(x)?;
                if total == 0.0 {
                    return Ok(0.0);
                }
                let mut ratio_sum = 0.0;
                for m in &self.members {
                    let f = m.cdf(x)?;
                    if f == 0.0 {
                        return Ok(0.0);
                    }
                    ratio_sum += m.pdf(x)? / f;
                }
                Ok(total * ratio_sum)
            }
            _ => {
                let h = (1e-5_f64).max(1e-4 * x).min(x / 3.0);
                let fm2 = self.max_cdf(x - 2.0 * h)?;
                let fm1 = self.max_cdf(x - h)?;
                let fp1 = self.max_cdf(x + h)?;
                let fp2 = self.max_cdf(x + 2.0 * h)?;
                let d = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
                Ok(d.max(0.0))
            }
        }
    }

    /// Smallest grid extent with `min_survival < 1e-12`, found by doubling.
    pub fn x_hi_min_tail(&self) -> Result<f64, EvalError> {
        self.double_until(|pop, x| pop.min_survival(x))
    }

    /// Smallest grid extent with `1 - max_cdf < 1e-12`, found by doubling.
    /// Max-extreme scenarios use this rule; the min-survival extent can stop
    /// short of where maxima still differ.
    pub fn x_hi_max_tail(&self) -> Result<f64, EvalError> {
        self.double_until(|pop, x| Ok(1.0 - pop.max_cdf(x)?))
    }

    fn double_until(
        &self,
        tail: impl Fn(&Self, f64) -> Result<f64, EvalError>,
    ) -> Result<f64, EvalError> {
        let mut x = 1.0;
        while tail(self, x)? >= TAIL_EPS {
            x *= 2.0;
            if x > 1e12 {
                return Err(EvalError::domain("tail search diverged"));
            }
        }
        Ok(x)
    }
}

/// Survival of a single shocked lifetime: `p·S(x)` for `x > 0` and exactly 1
/// at `x = 0` (the variable is nonnegative, so `P(X >= 0) = 1`).
pub fn shock_survival(member: &GMParams, p: f64, x: f64) -> Result<f64, EvalError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(EvalError::domain(format!(
            "shock probability must be in (0,1], got {p}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    Ok(p * member.survival(x)?)
}

/// The curve families the order checkers consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    MinSurvival,
    MaxCdf,
    MinHazard,
    MinDensity,
    MaxDensity,
}

impl std::fmt::Display for CurveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CurveKind::MinSurvival => "min-survival",
            CurveKind::MaxCdf => "max-cdf",
            CurveKind::MinHazard => "min-hazard",
            CurveKind::MinDensity => "min-density",
            CurveKind::MaxDensity => "max-density",
        };
        write!(f, "{s}")
    }
}

/// An evaluable extreme-order-statistic curve with its atom at zero made a
/// first-class field. The atom's meaning is kind-specific: for min-survival
/// it is the survival right-limit at 0 (`prod p_i`), for max-cdf the cdf at 0
/// (`prod (1 - p_i)`), for density kinds the point mass at 0 excluded from
/// the density integral, and 0 for the hazard kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeCurve {
    kind: CurveKind,
    pop: PopulationSpec,
    atom_at_zero: f64,
}

impl ExtremeCurve {
    pub fn new(pop: PopulationSpec, kind: CurveKind) -> Result<Self, EvalError> {
        match kind {
            CurveKind::MinHazard | CurveKind::MinDensity if pop.regime() != Regime::Independent => {
                return Err(EvalError::domain(format!(
                    "{kind} curves require the independent regime"
                )));
            }
            _ => {}
        }
        let p_all = pop.shock_atom();
        let q_all = pop
            .shock_p()
            .map_or(0.0, |p| p.iter().map(|&v| 1.0 - v).product());
        let atom_at_zero = match kind {
            CurveKind::MinSurvival => p_all,
            CurveKind::MaxCdf | CurveKind::MaxDensity => q_all,
            CurveKind::MinDensity => 1.0 - p_all,
            CurveKind::MinHazard => 0.0,
        };
        Ok(ExtremeCurve {
            kind,
            pop,
            atom_at_zero,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn regime(&self) -> Regime {
        self.pop.regime()
    }

    pub fn population(&self) -> &PopulationSpec {
        &self.pop
    }

    pub fn atom_at_zero(&self) -> f64 {
        self.atom_at_zero
    }

    /// Survival right-limit at zero, used by the hazard-order atom rule.
    pub fn survival_at_zero_plus(&self) -> f64 {
        match self.kind {
            CurveKind::MinSurvival => self.atom_at_zero,
            CurveKind::MaxCdf => 1.0 - self.atom_at_zero,
            _ => 1.0,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        match self.kind {
            CurveKind::MinSurvival => self.pop.min_survival(x),
            CurveKind::MaxCdf => self.pop.max_cdf(x),
            CurveKind::MinHazard => self.pop.min_hazard(x),
            CurveKind::MinDensity => self.pop.min_density(x),
            CurveKind::MaxDensity => self.pop.max_density(x),
        }
    }

    /// Default grid extent for this curve's tail.
    pub fn x_hi(&self) -> Result<f64, EvalError> {
        match self.kind {
            CurveKind::MaxCdf | CurveKind::MaxDensity => self.pop.x_hi_max_tail(),
            _ => self.pop.x_hi_min_tail(),
        }
    }
}
