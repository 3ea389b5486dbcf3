//! Verification harness: generates hypothesis-satisfying scenarios for the
//! registered theorems, runs their conclusions through the order checkers,
//! reruns the registered counterexample parameter sets, and aggregates
//! deterministic batch summaries.

pub mod counterexample;
pub mod generate;
pub mod registry;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::EvalError;
use crate::extremes::{CurveKind, ExtremeCurve, PopulationSpec};
use crate::majorize::Cone;
use crate::rng::SplitMix64;
use crate::stochorder::{check_relation, Direction, Grid, OrderingVerdict, Tol};

pub use counterexample::{run_counterexample, CeId, CeOutcome, CurveTable, ALL_COUNTEREXAMPLES};
pub use registry::{ConclusionPlan, HypothesisCheck, TheoremId, TheoremRegime, ALL_THEOREMS};

/// Rejection budget for scenario generation.
pub const MAX_REJECTIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("scenario dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("generation exhausted for {theorem} after {rejections} rejections")]
    Exhausted { theorem: String, rejections: usize },
}

/// Candidate transforms for the shock-probability hypotheses. The identity
/// is the transform generated scenarios rely on; the log-complement variant
/// is available for hypothesis reporting on supplied scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShockTransform {
    Identity,
    /// `h(p) = -ln(1 - p)`
    NegLogComplement,
}

impl ShockTransform {
    pub fn apply(&self, p: f64) -> f64 {
        match self {
            ShockTransform::Identity => p,
            ShockTransform::NegLogComplement => -(-p).ln_1p(),
        }
    }

    /// Grid probe of strict monotonicity on (0, 1).
    pub fn is_strictly_increasing(&self) -> bool {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..100 {
            let v = self.apply(i as f64 / 100.0);
            if v <= prev {
                return false;
            }
            prev = v;
        }
        true
    }

    /// Grid probe of (weak) convexity on (0, 1).
    pub fn is_convex(&self) -> bool {
        let h = |i: usize| self.apply(i as f64 / 100.0);
        (2..99).all(|i| h(i + 1) + h(i - 1) - 2.0 * h(i) >= -1e-12)
    }
}

impl std::fmt::Display for ShockTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShockTransform::Identity => write!(f, "identity"),
            ShockTransform::NegLogComplement => write!(f, "-ln(1-p)"),
        }
    }
}

/// One generated (or supplied) pair of populations, annotated with the
/// structure the generator used. The annotations are advisory: hypothesis
/// checks re-derive everything from the populations themselves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioPair {
    pub a: PopulationSpec,
    pub b: PopulationSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<Cone>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<ShockTransform>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<(usize, usize)>,
}

impl ScenarioPair {
    pub fn new(a: PopulationSpec, b: PopulationSpec) -> Self {
        ScenarioPair {
            a,
            b,
            cone: None,
            transform: None,
            blocks: None,
        }
    }

    fn with_cone(mut self, cone: Cone) -> Self {
        self.cone = Some(cone);
        self
    }

    fn with_transform(mut self, t: ShockTransform) -> Self {
        self.transform = Some(t);
        self
    }

    fn with_blocks(mut self, n1: usize, n2: usize) -> Self {
        self.blocks = Some((n1, n2));
        self
    }

    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("scenario serializes");
        format!("{:016x}", fnv1a(json.as_bytes()))
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Full record of one theorem run against one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub scenario_digest: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Cone>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_pass: bool,
    /// Conclusion verdict; absent when a hypothesis failed (the conclusion is
    /// then skipped, never reported as a false verdict).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<OrderingVerdict>,
    pub skipped_conclusion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_direction: Option<Direction>,
    /// True when the conclusion held in the expected direction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confirmed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub scenario: ScenarioPair,
}

/// Deterministic scenario generation: rejection-samples candidates until the
/// full hypothesis list passes. Identical `(id, n, seed)` give identical
/// scenarios.
pub fn gen_scenario(id: TheoremId, n: usize, seed: u64) -> Result<ScenarioPair, GenError> {
    gen_scenario_with_budget(id, n, seed, MAX_REJECTIONS)
}

/// `gen_scenario` with an explicit rejection budget.
pub fn gen_scenario_with_budget(
    id: TheoremId,
    n: usize,
    seed: u64,
    budget: usize,
) -> Result<ScenarioPair, GenError> {
    let mut rng = SplitMix64::new(seed);
    let mut rejections = 0;
    loop {
        let candidate = registry::generate_candidate(id, n, &mut rng)?;
        let (checks, _) = registry::hypotheses(id, &candidate);
        if checks.iter().all(|c| c.passed) {
            return Ok(candidate);
        }
        rejections += 1;
        if rejections > budget {
            return Err(GenError::Exhausted {
                theorem: id.to_string(),
                rejections,
            });
        }
    }
}

fn curve_pair(
    scenario: &ScenarioPair,
    kind: CurveKind,
) -> Result<(ExtremeCurve, ExtremeCurve), EvalError> {
    Ok((
        ExtremeCurve::new(scenario.a.clone(), kind)?,
        ExtremeCurve::new(scenario.b.clone(), kind)?,
    ))
}

/// Default conclusion grid: 2000 linear points from 0 to the larger of the
/// two curves' tail extents.
pub fn default_grid(a: &ExtremeCurve, b: &ExtremeCurve) -> Result<Grid, EvalError> {
    let x_hi = a.x_hi()?.max(b.x_hi()?);
    Grid::linear(x_hi, 2000).map_err(|e| EvalError::domain(e.to_string()))
}

/// Evaluate every hypothesis of `id` on `scenario` and, if all pass, its
/// conclusion on `grid` (or the default grid).
pub fn run_theorem(
    id: TheoremId,
    scenario: &ScenarioPair,
    grid: Option<Grid>,
    tol: Tol,
) -> TheoremReport {
    let (hypotheses, branch) = registry::hypotheses(id, scenario);
    let hypotheses_pass = hypotheses.iter().all(|c| c.passed);
    let notes: Vec<String> = id.notes().iter().map(|s| s.to_string()).collect();
    let mut report = TheoremReport {
        theorem: id.to_string(),
        scenario_digest: scenario.digest(),
        n: scenario.a.len(),
        branch,
        hypotheses,
        hypotheses_pass,
        conclusion: None,
        skipped_conclusion: !hypotheses_pass,
        expected_direction: None,
        confirmed: None,
        grid: None,
        notes,
        scenario: scenario.clone(),
    };
    if !hypotheses_pass {
        return report;
    }
    let plan = registry::conclusion_plan(id, branch);
    let curves = match curve_pair(scenario, plan.curve_kind) {
        Ok(c) => c,
        Err(e) => {
            report.notes.push(format!("curve construction failed: {e}"));
            return report;
        }
    };
    let (first, second) = if plan.swapped {
        (&curves.1, &curves.0)
    } else {
        (&curves.0, &curves.1)
    };
    let grid = match grid {
        Some(g) => g,
        None => match default_grid(first, second) {
            Ok(g) => g,
            Err(e) => {
                report.notes.push(format!("grid construction failed: {e}"));
                return report;
            }
        },
    };
    let verdict = check_relation(plan.relation, first, second, &grid, tol);
    report.confirmed = Some(verdict.direction_holds(plan.expected));
    report.expected_direction = Some(plan.expected);
    report.conclusion = Some(verdict);
    report.grid = Some(grid);
    report
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremSummary {
    pub theorem: String,
    pub regime: TheoremRegime,
    pub trials: usize,
    /// Conclusion held in the expected direction.
    pub confirmed: usize,
    pub holds: usize,
    pub holds_reversed: usize,
    pub violated: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    /// Full reports for every unconfirmed trial, serialized for inspection.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<TheoremReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub seed: u64,
    pub trials_per_theorem: usize,
    pub sample_sizes: Vec<usize>,
    pub tol: Tol,
    pub theorems: Vec<TheoremSummary>,
}

impl BatchSummary {
    pub fn all_confirmed(&self) -> bool {
        self.theorems.iter().all(|t| t.confirmed == t.trials)
    }
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub trials: usize,
    pub seed: u64,
    pub sample_sizes: Vec<usize>,
    pub grid: Option<Grid>,
    pub tol: Tol,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions {
            trials: 200,
            seed: 42,
            sample_sizes: vec![2, 3, 5],
            grid: None,
            tol: Tol::default(),
        }
    }
}

/// Run `trials` generated scenarios for each theorem. Trials derive their
/// PRNG substream from `(seed, theorem, trial index)` and are evaluated in
/// parallel into indexed slots, so thread count never changes the output.
pub fn batch_verify(ids: &[TheoremId], opts: &BatchOptions) -> Result<BatchSummary, GenError> {
    if opts.trials == 0 {
        return Err(GenError::NoTrials);
    }
    let mut theorems = Vec::with_capacity(ids.len());
    for &id in ids {
        let stream = opts.seed ^ fnv1a(id.to_string().as_bytes());
        let reports: Result<Vec<TheoremReport>, GenError> = (0..opts.trials)
            .into_par_iter()
            .map(|trial| {
                let n = opts.sample_sizes[trial % opts.sample_sizes.len()];
                let mut seed_rng = SplitMix64::substream(stream, trial as u64);
                let scenario = gen_scenario(id, n, seed_rng.next_u64())?;
                Ok(run_theorem(id, &scenario, opts.grid.clone(), opts.tol))
            })
            .collect();
        let reports = reports?;
        let mut summary = TheoremSummary {
            theorem: id.to_string(),
            regime: id.regime(),
            trials: opts.trials,
            confirmed: 0,
            holds: 0,
            holds_reversed: 0,
            violated: 0,
            inconclusive: 0,
            skipped: 0,
            notes: id.notes().iter().map(|s| s.to_string()).collect(),
            failures: Vec::new(),
        };
        for report in reports {
            use crate::stochorder::OrderStatus::*;
            if report.skipped_conclusion {
                summary.skipped += 1;
            }
            match report.conclusion.as_ref().map(|v| v.status) {
                Some(Holds) => summary.holds += 1,
                Some(HoldsReversed) => summary.holds_reversed += 1,
                Some(Violated) => summary.violated += 1,
                Some(Inconclusive) => summary.inconclusive += 1,
                None => {}
            }
            if report.confirmed == Some(true) {
                summary.confirmed += 1;
            } else {
                summary.failures.push(report);
            }
        }
        theorems.push(summary);
    }
    Ok(BatchSummary {
        seed: opts.seed,
        trials_per_theorem: opts.trials,
        sample_sizes: opts.sample_sizes.clone(),
        tol: opts.tol,
        theorems,
    })
}
