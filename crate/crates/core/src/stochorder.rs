//! Grid-based checkers for the five order relations between two extreme
//! curves: usual stochastic (st), hazard rate (hr), reversed hazard rate (rh),
//! likelihood ratio (lr), and relative ageing (ageing faster, R-hr).
//!
//! Each check classifies both directions in one pass. A decrease between
//! consecutive points (or a dominance gap) only counts against a direction
//! when it exceeds `tol_abs + tol_rel·scale`; declaring VIOLATED demands ten
//! times that, and anything in between is INCONCLUSIVE. Ratio checks trim
//! grid tails where a denominator drops under `1e-290` instead of dividing,
//! and the trimmed interval is reported in the verdict.
//!
//! Shock-regime atoms participate in st checks through the curve value at
//! `x = 0` and are excluded from the ratio sequences on `x > 0`; the
//! hazard-order conclusion at 0 is settled by comparing the survival
//! right-limits (the `prod p_i` comparison).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::EvalError;
use crate::extremes::{CurveKind, ExtremeCurve, Regime};

/// Denominator floor below which ratio points are trimmed.
pub const RATIO_FLOOR: f64 = 1e-290;

/// Factor a violation must exceed the tolerance by to be declared.
pub const VIOLATION_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Tol {
    pub fn scaled(&self, factor: f64) -> Self {
        Tol {
            abs: self.abs * factor,
            rel: self.rel * factor,
        }
    }

    fn at(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid needs at least 16 points, got {0}")]
    TooFewPoints(usize),
    #[error("grid needs x_max > x_min >= 0, got [{0}, {1}]")]
    BadRange(f64, f64),
    #[error("log spacing needs x_min > 0")]
    LogNeedsPositiveMin,
}

/// Strictly increasing evaluation points on `[x_min, x_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

#[derive(Deserialize)]
struct RawGrid {
    x_min: f64,
    x_max: f64,
    points: usize,
    spacing: Spacing,
}

impl TryFrom<RawGrid> for Grid {
    type Error = GridError;
    fn try_from(raw: RawGrid) -> Result<Self, GridError> {
        Grid::new(raw.x_min, raw.x_max, raw.points, raw.spacing)
    }
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, points: usize, spacing: Spacing) -> Result<Self, GridError> {
        if points < 16 {
            return Err(GridError::TooFewPoints(points));
        }
        if !(x_min >= 0.0 && x_max > x_min && x_max.is_finite()) {
            return Err(GridError::BadRange(x_min, x_max));
        }
        if spacing == Spacing::Log && x_min <= 0.0 {
            return Err(GridError::LogNeedsPositiveMin);
        }
        Ok(Grid {
            x_min,
            x_max,
            points,
            spacing,
        })
    }

    /// Linear grid from 0, the default the CLI and harness use.
    pub fn linear(x_max: f64, points: usize) -> Result<Self, GridError> {
        Grid::new(0.0, x_max, points, Spacing::Linear)
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| self.x_min + (self.x_max - self.x_min) * i as f64 / (n - 1) as f64)
                .collect(),
            Spacing::Log => {
                let (a, b) = (self.x_min.ln(), self.x_max.ln());
                (0..n)
                    .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    St,
    Hr,
    Rh,
    Lr,
    /// Ageing faster in terms of the hazard rate (relative ageing).
    AgeingFaster,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Relation::St => "st",
            Relation::Hr => "hr",
            Relation::Rh => "rh",
            Relation::Lr => "lr",
            Relation::AgeingFaster => "r-hr",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "st" => Ok(Relation::St),
            "hr" => Ok(Relation::Hr),
            "rh" => Ok(Relation::Rh),
            "lr" => Ok(Relation::Lr),
            "r-hr" | "rhr" | "ageing-faster" => Ok(Relation::AgeingFaster),
            other => Err(format!("unknown relation {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderStatus {
    Holds,
    HoldsReversed,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome for one direction of a relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DirectionOutcome {
    Pass,
    /// Violation above tolerance but inside the 10x declaration margin.
    Marginal {
        witness: Witness,
    },
    Fail {
        witness: Witness,
    },
    Errored {
        reason: String,
    },
}

impl DirectionOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, DirectionOutcome::Pass)
    }

    fn witness(&self) -> Option<&Witness> {
        match self {
            DirectionOutcome::Marginal { witness } | DirectionOutcome::Fail { witness } => {
                Some(witness)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingVerdict {
    pub relation: Relation,
    pub status: OrderStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub tol: Tol,
    /// x-interval dropped from ratio checks because a denominator underflowed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trimmed: Option<(f64, f64)>,
    pub forward: DirectionOutcome,
    pub reverse: DirectionOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reverse,
}

impl OrderingVerdict {
    fn from_directions(
        relation: Relation,
        forward: DirectionOutcome,
        reverse: DirectionOutcome,
        tol: Tol,
        trimmed: Option<(f64, f64)>,
        note: Option<String>,
    ) -> Self {
        let status = match (&forward, &reverse) {
            (DirectionOutcome::Errored { .. }, _) | (_, DirectionOutcome::Errored { .. }) => {
                OrderStatus::Inconclusive
            }
            (DirectionOutcome::Pass, _) => OrderStatus::Holds,
            (_, DirectionOutcome::Pass) => OrderStatus::HoldsReversed,
            (DirectionOutcome::Fail { .. }, DirectionOutcome::Fail { .. }) => OrderStatus::Violated,
            _ => OrderStatus::Inconclusive,
        };
        let witness = match status {
            OrderStatus::Violated | OrderStatus::Inconclusive => {
                forward.witness().or_else(|| reverse.witness()).cloned()
            }
            OrderStatus::HoldsReversed => forward.witness().cloned(),
            OrderStatus::Holds => None,
        };
        OrderingVerdict {
            relation,
            status,
            witness,
            tol,
            trimmed,
            forward,
            reverse,
            note,
        }
    }

    fn inconclusive(relation: Relation, tol: Tol, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        OrderingVerdict::from_directions(
            relation,
            DirectionOutcome::Errored {
                reason: reason.clone(),
            },
            DirectionOutcome::Errored { reason },
            tol,
            None,
            None,
        )
    }

    pub fn direction_holds(&self, dir: Direction) -> bool {
        match dir {
            Direction::Forward => self.forward.passed(),
            Direction::Reverse => self.reverse.passed(),
        }
    }
}

/// Accumulates violations of one direction and classifies at the end.
struct ViolationTracker {
    worst_ratio: f64,
    worst_margin: f64,
    worst_tol: f64,
    witness: Option<Witness>,
}

impl ViolationTracker {
    fn new() -> Self {
        ViolationTracker {
            worst_ratio: 0.0,
            worst_margin: 0.0,
            worst_tol: 0.0,
            witness: None,
        }
    }

    fn record(&mut self, margin: f64, tol: f64, x: f64, lhs: f64, rhs: f64) {
        if margin > 0.0 && margin / tol > self.worst_ratio {
            self.worst_ratio = margin / tol;
            self.worst_margin = margin;
            self.worst_tol = tol;
            self.witness = Some(Witness { x, lhs, rhs });
        }
    }

    fn outcome(self) -> DirectionOutcome {
        match self.witness {
            None => DirectionOutcome::Pass,
            Some(witness) => {
                if self.worst_margin <= self.worst_tol {
                    DirectionOutcome::Pass
                } else if self.worst_margin > VIOLATION_FACTOR * self.worst_tol {
                    DirectionOutcome::Fail { witness }
                } else {
                    DirectionOutcome::Marginal { witness }
                }
            }
        }
    }
}

/// Pointwise dominance `lhs >= rhs` (forward) over `(x, lhs, rhs)` triples.
fn dominance_outcomes(
    points: &[(f64, f64, f64)],
    tol: Tol,
) -> (DirectionOutcome, DirectionOutcome) {
    let mut fwd = ViolationTracker::new();
    let mut rev = ViolationTracker::new();
    for &(x, lhs, rhs) in points {
        let t = tol.at(lhs.abs().max(rhs.abs()));
        fwd.record(rhs - lhs, t, x, lhs, rhs);
        rev.record(lhs - rhs, t, x, lhs, rhs);
    }
    (fwd.outcome(), rev.outcome())
}

/// Nondecreasing (forward) / nonincreasing (reverse) over `(x, value)` pairs.
fn monotone_outcomes(points: &[(f64, f64)], tol: Tol) -> (DirectionOutcome, DirectionOutcome) {
    let mut fwd = ViolationTracker::new();
    let mut rev = ViolationTracker::new();
    for w in points.windows(2) {
        let (_, prev) = w[0];
        let (x, next) = w[1];
        let t = tol.at(prev.abs().max(next.abs()));
        fwd.record(prev - next, t, x, prev, next);
        rev.record(next - prev, t, x, prev, next);
    }
    (fwd.outcome(), rev.outcome())
}

/// Two independent routes to the same direction must agree; a hard split
/// between Pass and Fail marks the check inconclusive.
fn meet_routes(a: DirectionOutcome, b: DirectionOutcome) -> DirectionOutcome {
    use DirectionOutcome::*;
    match (a, b) {
        (Errored { reason }, _) | (_, Errored { reason }) => Errored { reason },
        (Pass, Fail { .. }) | (Fail { .. }, Pass) => Errored {
            reason: "survival-ratio and hazard-dominance routes disagree".into(),
        },
        (Pass, other) | (other, Pass) => other,
        (Marginal { witness }, _) | (_, Marginal { witness }) => Marginal { witness },
        (f @ Fail { .. }, Fail { .. }) => f,
    }
}

/// Conjunction of two conditions that must both hold for a direction: any
/// failure decides, marginality is sticky, errors propagate.
fn and_conditions(a: DirectionOutcome, b: DirectionOutcome) -> DirectionOutcome {
    use DirectionOutcome::*;
    match (a, b) {
        (Errored { reason }, _) | (_, Errored { reason }) => Errored { reason },
        (f @ Fail { .. }, _) | (_, f @ Fail { .. }) => f,
        (m @ Marginal { .. }, _) | (_, m @ Marginal { .. }) => m,
        (Pass, Pass) => Pass,
    }
}

fn cdf_value(curve: &ExtremeCurve, x: f64) -> Result<f64, EvalError> {
    match curve.kind() {
        CurveKind::MaxCdf => curve.eval(x),
        CurveKind::MinSurvival => Ok(1.0 - curve.eval(x)?),
        k => Err(EvalError::domain(format!(
            "st/rh need distribution curves, got {k}"
        ))),
    }
}

fn survival_value(curve: &ExtremeCurve, x: f64) -> Result<f64, EvalError> {
    match curve.kind() {
        CurveKind::MinSurvival => curve.eval(x),
        CurveKind::MaxCdf => Ok(1.0 - curve.eval(x)?),
        k => Err(EvalError::domain(format!(
            "hr needs distribution curves, got {k}"
        ))),
    }
}

/// Usual stochastic order `A <=st B`: `F_A(t) >= F_B(t)` on every grid point,
/// including the atom at `x = 0`.
pub fn check_st(a: &ExtremeCurve, b: &ExtremeCurve, grid: &Grid, tol: Tol) -> OrderingVerdict {
    let mut points = Vec::with_capacity(grid.points);
    for x in grid.values() {
        match (cdf_value(a, x), cdf_value(b, x)) {
            (Ok(fa), Ok(fb)) => points.push((x, fa, fb)),
            (Err(e), _) | (_, Err(e)) => {
                return OrderingVerdict::inconclusive(Relation::St, tol, e.to_string())
            }
        }
    }
    let (fwd, rev) = dominance_outcomes(&points, tol);
    OrderingVerdict::from_directions(Relation::St, fwd, rev, tol, None, None)
}

/// A ratio series over the grid plus the x-interval trimmed away.
type RatioSeries = (Vec<(f64, f64)>, Option<(f64, f64)>);

/// Collect a ratio series `num/den` on `x > 0`, trimming points where either
/// input is below `RATIO_FLOOR`.
fn ratio_series(
    xs: &[f64],
    mut num: impl FnMut(f64) -> Result<f64, EvalError>,
    mut den: impl FnMut(f64) -> Result<f64, EvalError>,
) -> Result<RatioSeries, EvalError> {
    let mut series = Vec::with_capacity(xs.len());
    let mut trimmed: Option<(f64, f64)> = None;
    for &x in xs {
        if x <= 0.0 {
            continue;
        }
        let n = num(x)?;
        let d = den(x)?;
        if n.abs() < RATIO_FLOOR || d.abs() < RATIO_FLOOR {
            trimmed = Some(match trimmed {
                None => (x, x),
                Some((lo, hi)) => (lo.min(x), hi.max(x)),
            });
            continue;
        }
        series.push((x, n / d));
    }
    Ok((series, trimmed))
}

fn checked_ratio_verdict(
    relation: Relation,
    series_result: Result<RatioSeries, EvalError>,
    tol: Tol,
) -> Result<RatioSeries, Box<OrderingVerdict>> {
    match series_result {
        Err(e) => Err(Box::new(OrderingVerdict::inconclusive(relation, tol, e.to_string()))),
        Ok((series, trimmed)) => {
            if series.len() < 2 {
                Err(Box::new(OrderingVerdict::inconclusive(
                    relation,
                    tol,
                    "ratio series trimmed to fewer than two points",
                )))
            } else {
                Ok((series, trimmed))
            }
        }
    }
}

/// Hazard rate order `A <=hr B`: `S_B/S_A` nondecreasing on `x > 0`, plus the
/// atom comparison at zero. Independent GM minima are cross-checked against
/// pointwise dominance of the hazard sums.
pub fn check_hr(a: &ExtremeCurve, b: &ExtremeCurve, grid: &Grid, tol: Tol) -> OrderingVerdict {
    let xs = grid.values();
    let series = ratio_series(&xs, |x| survival_value(b, x), |x| survival_value(a, x));
    let (series, trimmed) = match checked_ratio_verdict(Relation::Hr, series, tol) {
        Ok(v) => v,
        Err(verdict) => return *verdict,
    };
    let (mut fwd, mut rev) = monotone_outcomes(&series, tol);

    // Atom rule: the ratio jump at zero is governed by the survival
    // right-limits; A <=hr B needs the A-side atom to dominate.
    let s0a = a.survival_at_zero_plus();
    let s0b = b.survival_at_zero_plus();
    let mut atom_fwd = ViolationTracker::new();
    let mut atom_rev = ViolationTracker::new();
    let t = tol.at(s0a.max(s0b));
    atom_fwd.record(s0b - s0a, t, 0.0, s0a, s0b);
    atom_rev.record(s0a - s0b, t, 0.0, s0a, s0b);
    fwd = and_conditions(fwd, atom_fwd.outcome());
    rev = and_conditions(rev, atom_rev.outcome());

    // Second route for independent GM minima: hazard-sum dominance.
    let mut note = None;
    if a.kind() == CurveKind::MinSurvival
        && b.kind() == CurveKind::MinSurvival
        && a.regime() == Regime::Independent
        && b.regime() == Regime::Independent
    {
        let mut points = Vec::with_capacity(xs.len());
        let mut failed = None;
        for &x in &xs {
            match (a.population().min_hazard(x), b.population().min_hazard(x)) {
                (Ok(ra), Ok(rb)) => points.push((x, ra, rb)),
                (Err(e), _) | (_, Err(e)) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        match failed {
            Some(e) => {
                fwd = meet_routes(
                    fwd,
                    DirectionOutcome::Errored {
                        reason: e.to_string(),
                    },
                );
            }
            None => {
                let (hfwd, hrev) = dominance_outcomes(&points, tol);
                fwd = meet_routes(fwd, hfwd);
                rev = meet_routes(rev, hrev);
                note = Some("cross-checked against pointwise hazard dominance".to_string());
            }
        }
    }
    OrderingVerdict::from_directions(Relation::Hr, fwd, rev, tol, trimmed, note)
}

/// Reversed hazard rate order `A <=rh B`: `F_B/F_A` nondecreasing.
pub fn check_rh(a: &ExtremeCurve, b: &ExtremeCurve, grid: &Grid, tol: Tol) -> OrderingVerdict {
    let xs = grid.values();
    let series = ratio_series(&xs, |x| cdf_value(b, x), |x| cdf_value(a, x));
    let (series, trimmed) = match checked_ratio_verdict(Relation::Rh, series, tol) {
        Ok(v) => v,
        Err(verdict) => return *verdict,
    };
    let (fwd, rev) = monotone_outcomes(&series, tol);
    OrderingVerdict::from_directions(Relation::Rh, fwd, rev, tol, trimmed, None)
}

/// Likelihood ratio order `A <=lr B`: density ratio `f_B/f_A` nondecreasing.
pub fn check_lr(a: &ExtremeCurve, b: &ExtremeCurve, grid: &Grid, tol: Tol) -> OrderingVerdict {
    if !matches!(a.kind(), CurveKind::MinDensity | CurveKind::MaxDensity)
        || !matches!(b.kind(), CurveKind::MinDensity | CurveKind::MaxDensity)
    {
        return OrderingVerdict::inconclusive(Relation::Lr, tol, "lr needs density curves");
    }
    let xs = grid.values();
    let series = ratio_series(&xs, |x| b.eval(x), |x| a.eval(x));
    let (series, trimmed) = match checked_ratio_verdict(Relation::Lr, series, tol) {
        Ok(v) => v,
        Err(verdict) => return *verdict,
    };
    let (fwd, rev) = monotone_outcomes(&series, tol);
    OrderingVerdict::from_directions(Relation::Lr, fwd, rev, tol, trimmed, None)
}

/// Ageing faster order `A <=R-hr B`: hazard ratio `r_A/r_B` nondecreasing.
pub fn check_ageing_faster(
    a: &ExtremeCurve,
    b: &ExtremeCurve,
    grid: &Grid,
    tol: Tol,
) -> OrderingVerdict {
    if a.kind() != CurveKind::MinHazard || b.kind() != CurveKind::MinHazard {
        return OrderingVerdict::inconclusive(
            Relation::AgeingFaster,
            tol,
            "ageing-faster needs hazard curves",
        );
    }
    let xs = grid.values();
    let series = ratio_series(&xs, |x| a.eval(x), |x| b.eval(x));
    let (series, trimmed) = match checked_ratio_verdict(Relation::AgeingFaster, series, tol) {
        Ok(v) => v,
        Err(verdict) => return *verdict,
    };
    let (fwd, rev) = monotone_outcomes(&series, tol);
    OrderingVerdict::from_directions(Relation::AgeingFaster, fwd, rev, tol, trimmed, None)
}

/// Dispatch by relation.
pub fn check_relation(
    relation: Relation,
    a: &ExtremeCurve,
    b: &ExtremeCurve,
    grid: &Grid,
    tol: Tol,
) -> OrderingVerdict {
    match relation {
        Relation::St => check_st(a, b, grid, tol),
        Relation::Hr => check_hr(a, b, grid, tol),
        Relation::Rh => check_rh(a, b, grid, tol),
        Relation::Lr => check_lr(a, b, grid, tol),
        Relation::AgeingFaster => check_ageing_faster(a, b, grid, tol),
    }
}
