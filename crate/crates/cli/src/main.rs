//! `gm-order`: evaluate GM curves, check stochastic orders between sample
//! extremes, verify the registered theorems on generated scenarios, and
//! reproduce the registered counterexamples.
//!
//! Exit codes: 0 success/HOLDS, 1 violated or regression, 2 inconclusive or
//! generation exhausted, 64 usage error, 65 scenario schema violation.

mod csv;
mod scenario;

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use gm_order::extremes::ExtremeCurve;
use gm_order::gm::GMParams;
use gm_order::harness::{
    batch_verify, run_counterexample, run_theorem, BatchOptions, CeId, CurveTable, GenError,
    ScenarioPair, TheoremId, ALL_THEOREMS,
};
use gm_order::stochorder::{check_relation, Grid, OrderStatus, Spacing, Tol};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_SCHEMA: u8 = 65;

#[derive(Parser)]
#[command(
    name = "gm-order",
    about = "Gompertz-Makeham extreme-lifetime ordering toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate hazard, survival, cdf and pdf of one GM distribution.
    Eval(EvalArgs),
    /// Check the relation named in a scenario file between two populations.
    Check(CheckArgs),
    /// Verify a registered theorem on generated (or supplied) scenarios.
    Verify(VerifyArgs),
    /// Re-run a registered counterexample and emit its curves.
    Counterexample(CeArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    lambda: f64,
    /// Evaluation points, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    at: Option<Vec<f64>>,
    /// Invert the cdf at this probability instead.
    #[arg(long)]
    quantile: Option<f64>,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Grid lower end (default 0).
    #[arg(long)]
    grid_min: Option<f64>,
    /// Grid upper end (default: tail extent of the curves).
    #[arg(long)]
    grid_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Log-spaced grid (needs a positive lower end).
    #[arg(long)]
    grid_log: bool,
    /// Absolute and relative check tolerance (both set to this value).
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl GridArgs {
    fn tolerance(&self) -> Tol {
        Tol {
            abs: self.tol,
            rel: self.tol,
        }
    }

    fn overrides_given(&self) -> bool {
        self.grid_min.is_some()
            || self.grid_max.is_some()
            || self.grid_points.is_some()
            || self.grid_log
    }

    /// Resolve against an optional scenario-file grid and a default extent.
    fn resolve(&self, file_grid: Option<Grid>, default_max: f64) -> Result<Grid, String> {
        if !self.overrides_given() {
            if let Some(g) = file_grid {
                return Ok(g);
            }
        }
        let base = file_grid.unwrap_or(Grid {
            x_min: 0.0,
            x_max: default_max,
            points: 2000,
            spacing: Spacing::Linear,
        });
        let spacing = if self.grid_log {
            Spacing::Log
        } else {
            base.spacing
        };
        let x_min = self
            .grid_min
            .unwrap_or(if spacing == Spacing::Log && base.x_min <= 0.0 {
                1e-6
            } else {
                base.x_min
            });
        Grid::new(
            x_min,
            self.grid_max.unwrap_or(base.x_max),
            self.grid_points.unwrap_or(base.points),
            spacing,
        )
        .map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Scenario JSON path.
    scenario: String,
    /// Write both curves plus the diagnostic series to this CSV path.
    #[arg(long)]
    emit: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id (T1-T6, T9-T24) or "all".
    #[arg(long)]
    theorem: String,
    /// Generated scenarios per theorem.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample sizes to cycle through, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [2usize, 3, 5])]
    n: Vec<usize>,
    /// Verify this scenario file instead of generating scenarios.
    #[arg(long)]
    scenario: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct CeArgs {
    /// Counterexample id, e.g. CE-MIN-LR-A.
    #[arg(long)]
    id: String,
    /// Write the curve table to this CSV path.
    #[arg(long)]
    out: Option<String>,
    #[command(flatten)]
    grid: GridArgs,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let code = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Check(args) => cmd_check(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Counterexample(args) => cmd_counterexample(args),
    };
    ExitCode::from(code)
}

/// Optional parallelism hint; results never depend on it.
fn configure_threads() {
    if let Ok(v) = std::env::var("GM_ORDER_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn schema_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_SCHEMA
}

fn cmd_eval(args: EvalArgs) -> u8 {
    let params = match GMParams::new(args.alpha, args.beta, args.lambda) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    match (args.at, args.quantile) {
        (Some(points), None) => {
            if let Some(bad) = points.iter().find(|&&x| !(x >= 0.0) || !x.is_finite()) {
                return usage_error(format!("evaluation points must be >= 0, got {bad}"));
            }
            println!(
                "{:>24} {:>24} {:>24} {:>24} {:>24}",
                "x", "hazard", "survival", "cdf", "pdf"
            );
            for x in points {
                let row = (|| -> Result<(f64, f64, f64, f64), gm_order::EvalError> {
                    Ok((
                        params.hazard(x)?,
                        params.survival(x)?,
                        params.cdf(x)?,
                        params.pdf(x)?,
                    ))
                })();
                match row {
                    Ok((h, s, c, f)) => println!(
                        "{:>24.16e} {:>24.16e} {:>24.16e} {:>24.16e} {:>24.16e}",
                        x, h, s, c, f
                    ),
                    Err(e) => return usage_error(format!("x = {x}: {e}")),
                }
            }
            EXIT_OK
        }
        (None, Some(q)) => match params.quantile(q) {
            Ok(x) => {
                println!("{:.16e}", x);
                EXIT_OK
            }
            Err(e) => usage_error(e),
        },
        _ => usage_error("exactly one of --at or --quantile is required"),
    }
}

fn cmd_check(args: CheckArgs) -> u8 {
    let text = match fs::read_to_string(&args.scenario) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {e}", args.scenario)),
    };
    let file = match scenario::parse_scenario(&text) {
        Ok(f) => f,
        Err(e) => return schema_error(format!("{e:#}")),
    };
    let relation = match file.relation() {
        Ok(r) => r,
        Err(e) => return schema_error(e),
    };
    let kind = match file.curve_kind() {
        Ok(k) => k,
        Err(e) => return schema_error(e),
    };
    let (pop_a, pop_b) = match (file.a.expand(), file.b.expand()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return schema_error(format!("{e:#}")),
    };
    let (curve_a, curve_b) = match (
        ExtremeCurve::new(pop_a, kind),
        ExtremeCurve::new(pop_b, kind),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return schema_error(e),
    };
    let default_max = match curve_a.x_hi().and_then(|a| Ok(a.max(curve_b.x_hi()?))) {
        Ok(v) => v,
        Err(e) => return schema_error(format!("tail search failed: {e}")),
    };
    let grid = match args.grid.resolve(file.grid, default_max) {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };
    let tol = args.grid.tolerance();
    let verdict = check_relation(relation, &curve_a, &curve_b, &grid, tol);
    if let Some(path) = args.emit {
        let table = CurveTable::build(&curve_a, &curve_b, relation, &grid);
        if let Err(e) = fs::write(&path, csv::render_csv(&table)) {
            return usage_error(format!("{path}: {e}"));
        }
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&verdict).expect("verdict serializes")
    );
    match verdict.status {
        OrderStatus::Holds => EXIT_OK,
        OrderStatus::Violated => EXIT_VIOLATED,
        OrderStatus::HoldsReversed => {
            // the requested direction failed; hard failure counts as violated
            if matches!(
                verdict.forward,
                gm_order::stochorder::DirectionOutcome::Fail { .. }
            ) {
                EXIT_VIOLATED
            } else {
                EXIT_INCONCLUSIVE
            }
        }
        OrderStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn parse_theorems(spec: &str) -> Result<Vec<TheoremId>, String> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(ALL_THEOREMS.to_vec());
    }
    spec.split(',')
        .map(|s| TheoremId::from_str(s.trim()))
        .collect()
}

fn write_report(out: Option<&str>, json: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, json).map_err(|e| format!("{path}: {e}")),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let ids = match parse_theorems(&args.theorem) {
        Ok(ids) => ids,
        Err(e) => return usage_error(e),
    };
    if args.n.iter().any(|&n| n < 2) {
        return usage_error("sample sizes must be at least 2");
    }
    let tol = args.grid.tolerance();
    let grid_override = if args.grid.overrides_given() {
        match args.grid.resolve(None, 1.0) {
            Ok(g) => Some(g),
            Err(e) => return usage_error(e),
        }
    } else {
        None
    };

    // single supplied scenario
    if let Some(path) = &args.scenario {
        let id = match ids.as_slice() {
            [one] => *one,
            _ => return usage_error("--scenario requires exactly one --theorem id"),
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage_error(format!("{path}: {e}")),
        };
        let file = match scenario::parse_scenario(&text) {
            Ok(f) => f,
            Err(e) => return schema_error(format!("{e:#}")),
        };
        let (a, b) = match (file.a.expand(), file.b.expand()) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return schema_error(format!("{e:#}")),
        };
        let report = run_theorem(id, &ScenarioPair::new(a, b), grid_override, tol);
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = write_report(args.out.as_deref(), &json) {
            return usage_error(e);
        }
        return match report.confirmed {
            Some(true) => EXIT_OK,
            Some(false) => EXIT_VIOLATED,
            None => EXIT_INCONCLUSIVE,
        };
    }

    if args.trials == 0 {
        return usage_error("--trials must be at least 1");
    }
    let opts = BatchOptions {
        trials: args.trials,
        seed: args.seed,
        sample_sizes: args.n.clone(),
        grid: grid_override,
        tol,
    };
    match batch_verify(&ids, &opts) {
        Ok(summary) => {
            let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
            if let Err(e) = write_report(args.out.as_deref(), &json) {
                return usage_error(e);
            }
            if summary.all_confirmed() {
                EXIT_OK
            } else {
                EXIT_VIOLATED
            }
        }
        Err(e @ GenError::Exhausted { .. }) => {
            eprintln!("error: {e}");
            EXIT_INCONCLUSIVE
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_counterexample(args: CeArgs) -> u8 {
    let id = match CeId::from_str(&args.id) {
        Ok(id) => id,
        Err(e) => return usage_error(e),
    };
    let grid = if args.grid.overrides_given() {
        // counterexample grids default to the registered tail extent
        let (pa, pb) = id.populations();
        let kind = id.curve_kind();
        let default_max = (|| -> Result<f64, gm_order::EvalError> {
            let a = ExtremeCurve::new(pa, kind)?;
            let b = ExtremeCurve::new(pb, kind)?;
            Ok(a.x_hi()?.max(b.x_hi()?))
        })();
        let default_max = match default_max {
            Ok(v) => v,
            Err(e) => return usage_error(e),
        };
        match args.grid.resolve(None, default_max) {
            Ok(g) => Some(g),
            Err(e) => return usage_error(e),
        }
    } else {
        None
    };
    match run_counterexample(id, grid, args.grid.tolerance()) {
        Ok(outcome) => {
            if let Some(path) = args.out {
                if let Err(e) = fs::write(&path, csv::render_csv(&outcome.table)) {
                    return usage_error(format!("{path}: {e}"));
                }
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome).expect("outcome serializes")
            );
            if outcome.reproduced {
                EXIT_OK
            } else {
                eprintln!("error: {id} did not reproduce the registered violation");
                EXIT_VIOLATED
            }
        }
        Err(e) => usage_error(e),
    }
}
