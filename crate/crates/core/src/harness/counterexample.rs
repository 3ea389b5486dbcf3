//! The registered counterexample parameter sets: frozen populations whose
//! order checks must come out VIOLATED in both directions. Each run also
//! emits a curve table (both curves plus the diagnostic series: a difference
//! for st, a ratio for the others) for CSV plotting.

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::extremes::{CurveKind, ExtremeCurve, PopulationSpec};
use crate::gm::GMParams;
use crate::stochorder::{check_relation, Grid, OrderStatus, OrderingVerdict, Relation, Tol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CeId {
    MinLrA,
    MinLrB,
    MaxSt1,
    MaxSt2,
    MaxRh1,
    MaxRh2,
    MaxRh3,
    MaxRh4,
}

pub const ALL_COUNTEREXAMPLES: [CeId; 8] = [
    CeId::MinLrA,
    CeId::MinLrB,
    CeId::MaxSt1,
    CeId::MaxSt2,
    CeId::MaxRh1,
    CeId::MaxRh2,
    CeId::MaxRh3,
    CeId::MaxRh4,
];

impl std::fmt::Display for CeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CeId::MinLrA => "CE-MIN-LR-A",
            CeId::MinLrB => "CE-MIN-LR-B",
            CeId::MaxSt1 => "CE-MAX-ST-1",
            CeId::MaxSt2 => "CE-MAX-ST-2",
            CeId::MaxRh1 => "CE-MAX-RH-1",
            CeId::MaxRh2 => "CE-MAX-RH-2",
            CeId::MaxRh3 => "CE-MAX-RH-3",
            CeId::MaxRh4 => "CE-MAX-RH-4",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for CeId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_COUNTEREXAMPLES
            .iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown counterexample id {s:?}"))
    }
}

fn pop(alpha: [f64; 2], beta: [f64; 2], lambda: [f64; 2]) -> PopulationSpec {
    let members = alpha
        .iter()
        .zip(beta.iter())
        .zip(lambda.iter())
        .map(|((a, b), l)| GMParams::new(*a, *b, *l).expect("frozen parameters are valid"))
        .collect();
    PopulationSpec::independent(members).expect("two members")
}

impl CeId {
    pub fn relation(&self) -> Relation {
        match self {
            CeId::MinLrA | CeId::MinLrB => Relation::Lr,
            CeId::MaxSt1 | CeId::MaxSt2 => Relation::St,
            _ => Relation::Rh,
        }
    }

    pub fn curve_kind(&self) -> CurveKind {
        match self {
            CeId::MinLrA | CeId::MinLrB => CurveKind::MinDensity,
            _ => CurveKind::MaxCdf,
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            CeId::MinLrA => "minima admit no likelihood-ratio order under alpha majorization",
            CeId::MinLrB => "minima admit no likelihood-ratio order under beta majorization",
            CeId::MaxSt1 => "maxima admit no stochastic order under alpha majorization",
            CeId::MaxSt2 => "maxima admit no stochastic order under reciprocal-beta majorization",
            CeId::MaxRh1 => "maxima admit no reversed-hazard order (alpha variant)",
            CeId::MaxRh2 => "maxima admit no reversed-hazard order (lambda variant, shared beta)",
            CeId::MaxRh3 => "maxima admit no reversed-hazard order (lambda variant, shared alpha)",
            CeId::MaxRh4 => "maxima admit no reversed-hazard order (reciprocal-beta variant)",
        }
    }

    /// The frozen population pair.
    pub fn populations(&self) -> (PopulationSpec, PopulationSpec) {
        match self {
            CeId::MinLrA => (
                pop([0.1, 20.0], [0.2, 0.1], [0.6, 0.5]),
                pop([2.1, 18.0], [0.2, 0.1], [0.6, 0.5]),
            ),
            CeId::MinLrB => (
                pop([20.0, 0.1], [0.8, 0.2], [0.5, 0.6]),
                pop([20.0, 0.1], [0.7, 0.3], [0.5, 0.6]),
            ),
            CeId::MaxSt1 => (
                pop([0.2, 0.1], [2.0, 1.0], [0.6, 0.6]),
                pop([0.18, 0.12], [2.0, 1.0], [0.6, 0.6]),
            ),
            CeId::MaxSt2 => (
                pop([0.1, 0.2], [0.5, 1.0], [0.02, 0.02]),
                pop([0.1, 0.2], [1.0 / 1.6, 1.0 / 1.4], [0.02, 0.02]),
            ),
            CeId::MaxRh1 => (
                pop([20.0, 0.1], [2.0, 2.0], [0.6, 0.5]),
                pop([18.0, 2.1], [2.0, 2.0], [0.6, 0.5]),
            ),
            CeId::MaxRh2 => (
                pop([0.02, 0.01], [0.2, 0.2], [0.07, 0.05]),
                pop([0.02, 0.01], [0.2, 0.2], [0.06, 0.06]),
            ),
            CeId::MaxRh3 => (
                pop([0.02, 0.02], [0.2, 0.1], [0.07, 0.05]),
                pop([0.02, 0.02], [0.2, 0.1], [0.06, 0.06]),
            ),
            CeId::MaxRh4 => (
                pop([0.02, 0.02], [1.0 / 0.3, 1.0 / 0.1], [0.05, 0.07]),
                pop([0.02, 0.02], [5.0, 5.0], [0.05, 0.07]),
            ),
        }
    }
}

/// Curve table for CSV emission: an `x` column plus one column per series;
/// `None` cells mark points a series could not produce.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CurveTable {
    /// Both curves and the diagnostic series over the grid.
    pub fn build(
        a: &ExtremeCurve,
        b: &ExtremeCurve,
        relation: Relation,
        grid: &Grid,
    ) -> CurveTable {
        let diag_name = if relation == Relation::St {
            "diff_a_minus_b"
        } else {
            "ratio_a_over_b"
        };
        let columns = vec![
            "x".to_string(),
            format!("a_{}", a.kind()),
            format!("b_{}", b.kind()),
            diag_name.to_string(),
        ];
        let mut rows = Vec::with_capacity(grid.points);
        for x in grid.values() {
            let va = a.eval(x).ok().filter(|v| v.is_finite());
            let vb = b.eval(x).ok().filter(|v| v.is_finite());
            let diag = match (va, vb) {
                (Some(va), Some(vb)) => {
                    if relation == Relation::St {
                        Some(va - vb)
                    } else if vb.abs() >= crate::stochorder::RATIO_FLOOR {
                        Some(va / vb)
                    } else {
                        None
                    }
                }
                _ => None,
            };
            rows.push(vec![Some(x), va, vb, diag]);
        }
        CurveTable { columns, rows }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CeOutcome {
    pub id: String,
    pub description: String,
    pub relation: Relation,
    pub verdict: OrderingVerdict,
    /// True when the registered VIOLATED status was reproduced.
    pub reproduced: bool,
    pub grid: Grid,
    #[serde(skip)]
    pub table: CurveTable,
}

/// Run one registered counterexample: evaluate the relevant curves on the
/// grid (default: 2000 linear points to the tail extent), confirm the
/// VIOLATED status, and return the curve table. A status other than VIOLATED
/// is a regression, reported through `reproduced = false`.
pub fn run_counterexample(id: CeId, grid: Option<Grid>, tol: Tol) -> Result<CeOutcome, EvalError> {
    let (pa, pb) = id.populations();
    let a = ExtremeCurve::new(pa, id.curve_kind())?;
    let b = ExtremeCurve::new(pb, id.curve_kind())?;
    let grid = match grid {
        Some(g) => g,
        None => super::default_grid(&a, &b)?,
    };
    let verdict = check_relation(id.relation(), &a, &b, &grid, tol);
    let table = CurveTable::build(&a, &b, id.relation(), &grid);
    Ok(CeOutcome {
        id: id.to_string(),
        description: id.description().to_string(),
        relation: id.relation(),
        reproduced: verdict.status == OrderStatus::Violated,
        verdict,
        grid,
        table,
    })
}
