//! Scenario file schema: two populations, an optional grid, and the relation
//! to check. Scalar broadcast fields (`alpha_scalar`, `beta_scalar`,
//! `lambda_scalar`) expand to per-member values before validation, covering
//! the parameter sets stated with one shared scalar.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use gm_order::archimedean::Generator;
use gm_order::extremes::{CurveKind, PopulationSpec};
use gm_order::gm::GMParams;
use gm_order::stochorder::{Grid, Relation};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(rename = "A")]
    pub a: PopulationFile,
    #[serde(rename = "B")]
    pub b: PopulationFile,
    #[serde(default)]
    pub grid: Option<Grid>,
    pub relation: String,
    pub extreme: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationFile {
    pub members: Vec<MemberFile>,
    #[serde(default)]
    pub shock_p: Option<Vec<f64>>,
    #[serde(default)]
    pub copula: Option<Generator>,
    #[serde(default)]
    pub alpha_scalar: Option<f64>,
    #[serde(default)]
    pub beta_scalar: Option<f64>,
    #[serde(default)]
    pub lambda_scalar: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberFile {
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub lambda: Option<f64>,
}

impl PopulationFile {
    pub fn expand(&self) -> Result<PopulationSpec> {
        let mut members = Vec::with_capacity(self.members.len());
        for (i, m) in self.members.iter().enumerate() {
            let pick = |field: Option<f64>, scalar: Option<f64>, name: &str| {
                field
                    .or(scalar)
                    .ok_or_else(|| anyhow!("member {i}: missing {name} (no scalar broadcast)"))
            };
            let alpha = pick(m.alpha, self.alpha_scalar, "alpha")?;
            let beta = pick(m.beta, self.beta_scalar, "beta")?;
            let lambda = pick(m.lambda, self.lambda_scalar, "lambda")?;
            members
                .push(GMParams::new(alpha, beta, lambda).with_context(|| format!("member {i}"))?);
        }
        let pop = match (&self.shock_p, &self.copula) {
            (Some(p), None) => PopulationSpec::with_shocks(members, p.clone())?,
            (None, Some(g)) => PopulationSpec::with_copula(members, g.clone())?,
            (None, None) => PopulationSpec::independent(members)?,
            (Some(_), Some(_)) => bail!("shock_p and copula are mutually exclusive"),
        };
        Ok(pop)
    }
}

impl ScenarioFile {
    pub fn relation(&self) -> Result<Relation> {
        self.relation.parse::<Relation>().map_err(|e| anyhow!(e))
    }

    /// Curve family implied by `(relation, extreme)`.
    pub fn curve_kind(&self) -> Result<CurveKind> {
        let relation = self.relation()?;
        match (relation, self.extreme.as_str()) {
            (Relation::St | Relation::Hr | Relation::Rh, "min") => Ok(CurveKind::MinSurvival),
            (Relation::Lr, "min") => Ok(CurveKind::MinDensity),
            (Relation::AgeingFaster, "min") => Ok(CurveKind::MinHazard),
            (Relation::St | Relation::Hr | Relation::Rh, "max") => Ok(CurveKind::MaxCdf),
            (Relation::Lr, "max") => Ok(CurveKind::MaxDensity),
            (Relation::AgeingFaster, "max") => {
                bail!("ageing-faster checks are not defined for the maximum curves")
            }
            (_, other) => bail!("extreme must be \"min\" or \"max\", got {other:?}"),
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    serde_json::from_str(text).context("scenario file does not match the schema")
}
