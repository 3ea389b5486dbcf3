//! Black-box checks of the command-line surface: exit codes, scenario-file
//! handling, CSV emission, and byte-level determinism.

use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gm-order"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const ST_SCENARIO: &str = r#"{
  "A": {"members": [{"alpha": 0.2, "beta": 2.0}, {"alpha": 0.1, "beta": 1.0}],
         "lambda_scalar": 0.6},
  "B": {"members": [{"alpha": 0.18, "beta": 2.0}, {"alpha": 0.12, "beta": 1.0}],
         "lambda_scalar": 0.6},
  "relation": "st",
  "extreme": "max"
}"#;

#[test]
fn eval_prints_the_hazard_table() {
    let out = run(&[
        "eval", "--alpha", "0.1", "--beta", "0.2", "--lambda", "0.6", "--at", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("hazard"));
    // h(0) = alpha + lambda = 0.7
    assert!(text.contains("6.9999999999999996e-1") || text.contains("7.0000000000000000e-1"));
}

#[test]
fn eval_quantile_zero_is_zero() {
    let out = run(&[
        "eval",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--lambda",
        "0",
        "--quantile",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("0.0000000000000000e0"));
}

#[test]
fn eval_rejects_bad_inputs_with_usage_code() {
    for args in [
        vec![
            "eval", "--alpha", "0.1", "--beta", "0.2", "--lambda", "0.6", "--at", "-1",
        ],
        vec!["eval", "--alpha", "0.1", "--beta", "0.2", "--lambda", "0.6"],
        vec![
            "eval", "--alpha", "-3", "--beta", "0.2", "--lambda", "0.6", "--at", "1",
        ],
        vec![
            "eval",
            "--alpha",
            "0.1",
            "--beta",
            "0.2",
            "--lambda",
            "0.6",
            "--quantile",
            "1.0",
        ],
        vec!["eval", "--alpha", "0.1", "--unknown-flag", "1"],
        vec!["nonsense-subcommand"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(64), "args {args:?}");
    }
}

#[test]
fn check_reports_the_registered_sign_change() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.json");
    fs::write(&path, ST_SCENARIO).unwrap();
    let csv_path = dir.path().join("curves.csv");
    let out = run(&[
        "check",
        path.to_str().unwrap(),
        "--emit",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("VIOLATED"));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,a_max-cdf,b_max-cdf,diff_a_minus_b"));
    // the difference column changes sign across the grid
    let diffs: Vec<f64> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .collect();
    assert!(diffs.iter().any(|&d| d > 1e-8) && diffs.iter().any(|&d| d < -1e-8));
    // strictly increasing x column, no NaN cells
    assert!(!csv.contains("NaN"));
}

#[test]
fn check_self_scenario_holds() {
    let text = r#"{
      "A": {"members": [{"alpha": 1.0, "beta": 1.0, "lambda": 0.5}]},
      "B": {"members": [{"alpha": 1.0, "beta": 1.0, "lambda": 0.5}]},
      "relation": "st",
      "extreme": "min"
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("self.json");
    fs::write(&path, text).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn check_rejects_malformed_and_invalid_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    fs::write(&bad_json, "{ not json").unwrap();
    assert_eq!(
        run(&["check", bad_json.to_str().unwrap()]).status.code(),
        Some(65)
    );

    let bad_schema = dir.path().join("schema.json");
    fs::write(
        &bad_schema,
        r#"{"A": {"members": []}, "B": {"members": []}, "relation": "st", "extreme": "max"}"#,
    )
    .unwrap();
    assert_eq!(
        run(&["check", bad_schema.to_str().unwrap()]).status.code(),
        Some(65)
    );

    // shock and copula together violate the population contract
    let conflict = dir.path().join("conflict.json");
    fs::write(
        &conflict,
        r#"{
          "A": {"members": [{"alpha": 1, "beta": 1, "lambda": 1}],
                 "shock_p": [0.5], "copula": {"family": "independence"}},
          "B": {"members": [{"alpha": 1, "beta": 1, "lambda": 1}]},
          "relation": "st",
          "extreme": "min"
        }"#,
    )
    .unwrap();
    assert_eq!(
        run(&["check", conflict.to_str().unwrap()]).status.code(),
        Some(65)
    );
    // missing file is a usage error, not a schema one
    assert_eq!(
        run(&["check", "/nonexistent/path.json"]).status.code(),
        Some(64)
    );
}

#[test]
fn verify_small_run_confirms_and_is_deterministic() {
    let args = [
        "verify",
        "--theorem",
        "T6",
        "--trials",
        "5",
        "--seed",
        "1",
        "--n",
        "2",
    ];
    let a = run(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&[
        "verify",
        "--theorem",
        "T6",
        "--trials",
        "5",
        "--seed",
        "2",
        "--n",
        "2",
    ]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn verify_rejects_unknown_ids_and_zero_trials() {
    assert_eq!(run(&["verify", "--theorem", "T99"]).status.code(), Some(64));
    assert_eq!(run(&["verify", "--theorem", "T7"]).status.code(), Some(64));
    assert_eq!(
        run(&["verify", "--theorem", "T4", "--trials", "0"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn verify_single_scenario_file() {
    let text = r#"{
      "A": {"members": [{"alpha": 3.0, "beta": 1.0, "lambda": 1.0},
                         {"alpha": 1.0, "beta": 0.5, "lambda": 1.0}]},
      "B": {"members": [{"alpha": 2.0, "beta": 1.0, "lambda": 1.0},
                         {"alpha": 2.0, "beta": 0.5, "lambda": 1.0}]},
      "relation": "hr",
      "extreme": "min"
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t4.json");
    fs::write(&path, text).unwrap();
    let out = run(&[
        "verify",
        "--theorem",
        "T4",
        "--scenario",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("\"confirmed\": true"));
}

#[test]
fn counterexample_reproduces_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ce.csv");
    let out = run(&[
        "counterexample",
        "--id",
        "CE-MAX-RH-2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let csv = fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("x,a_max-cdf,b_max-cdf,ratio_a_over_b"));
    assert!(csv.lines().count() > 1000);
    assert_eq!(
        run(&["counterexample", "--id", "bogus"]).status.code(),
        Some(64)
    );
}

#[test]
fn counterexample_ratio_series_is_non_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lr.csv");
    let out = run(&[
        "counterexample",
        "--id",
        "CE-MIN-LR-A",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(&path).unwrap();
    let ratios: Vec<f64> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .collect();
    let rises = ratios.windows(2).any(|w| w[1] > w[0] + 1e-9);
    let falls = ratios.windows(2).any(|w| w[1] < w[0] - 1e-9);
    assert!(rises && falls, "lr ratio series should change direction");
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["check", "--help"]).status.code(), Some(0));
}
