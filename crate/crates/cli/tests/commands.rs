use std::borrow::BorrowMut;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn quasistab(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quasistab"));
    cmd.args(args).env_remove("QUASISTAB_TOL");
    cmd
}

fn run(mut cmd: impl BorrowMut<Command>) -> (i32, Value, Output) {
    let out = cmd.borrow_mut().output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, out)
}

fn config(name: &str) -> String {
    configs().join(name).to_str().unwrap().to_string()
}

#[test]
fn metrize_three_point_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.csv");
    let (code, report, _) = run(quasistab(&["metrize", "--in", &config("three-point.csv"), "--kappa", "8", "--out", out.to_str().unwrap()]));
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["result"]["p"], 0.25);
    let delta = quasistab::io::read_distance_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(delta[0][2].value(), 2.0);
    assert_eq!(delta[2][0].value(), 2.0);
}

#[test]
fn metrize_json_keeps_infinite_entries() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.json");
    let (code, _, _) = run(quasistab(&["metrize", "--in", &config("clusters.json"), "--out", out.to_str().unwrap()]));
    assert_eq!(code, 0);
    let doc = quasistab::io::read_distance_json(std::fs::File::open(&out).unwrap()).unwrap();
    assert!(doc.d[0][2].is_infinite());
    assert_eq!(doc.d[0][1].value(), 1.0);
}

#[test]
fn metrize_rejects_an_invalid_kappa_as_a_certified_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.csv");
    let (code, report, _) = run(quasistab(&["metrize", "--in", &config("three-point.csv"), "--kappa", "2", "--out", out.to_str().unwrap()]));
    assert_eq!(code, 1);
    assert_eq!(report["result"]["b_metric"]["passed"], false);
    let v = &report["result"]["b_metric"]["violation"];
    assert_eq!(v["axiom"], "triangle");
    assert_eq!((v["i"].as_u64(), v["j"].as_u64(), v["k"].as_u64()), (Some(0), Some(2), Some(1)));
    assert!(!out.exists());
}

#[test]
fn metrize_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.csv");
    let (code, _, o) = run(quasistab(&["metrize", "--in", &config("three-point.csv"), "--out", out.to_str().unwrap()]));
    assert_eq!(code, 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--kappa"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "0,1\n1,zero\n").unwrap();
    let (code, report, _) = run(quasistab(&["metrize", "--in", bad.to_str().unwrap(), "--kappa", "1", "--out", out.to_str().unwrap()]));
    assert_eq!(code, 2);
    assert!(report["error"].as_str().unwrap().contains("row 2, column 2"), "{report}");

    let (code, _, _) = run(quasistab(&["metrize", "--in", "/nonexistent/D.csv", "--kappa", "1", "--out", out.to_str().unwrap()]));
    assert_eq!(code, 2);
}

#[test]
fn verify_reals_cubic_passes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("points.csv");
    let (code, report, _) = run(quasistab(&["verify", "--config", &config("r-cubic.json"), "--csv", csv.to_str().unwrap()]));
    assert_eq!(code, 0);
    let ratio = report["result"]["max_error_ratio"].as_f64().unwrap();
    assert!((ratio - 0.25).abs() < 1e-9, "{ratio}");
    assert_eq!(report["config"]["L"], 0.25);
    let table = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "x,defect,phi,error,bound");
    // six grid points plus the origin
    assert_eq!(lines.len(), 8);
    let row: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], -2.0);
    assert!((row[4] - 8.0).abs() < 1e-12, "bound 4|x| at x = -2: {}", row[4]);
}

#[test]
fn verify_small_phi_is_a_certified_failure_with_witness() {
    let (code, report, _) = run(quasistab(&["verify", "--config", &config("r-cubic-small-phi.json")]));
    assert_eq!(code, 1);
    assert_eq!(report["verdict"], "fail");
    let defect = &report["result"]["hypothesis_defect"];
    assert_eq!(defect["passed"], false);
    assert!(defect["witness"].is_array());
}

#[test]
fn verify_power_law_and_lhalf_configs_pass() {
    for name in ["power-law.json", "lhalf-corpus.json"] {
        let (code, report, _) = run(quasistab(&["verify", "--config", &config(name)]));
        assert_eq!(code, 0, "{name}: {report}");
    }
}

#[test]
fn verify_malformed_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, "{\n  \"space\": \"reals\",\n  \"m\": two\n}\n").unwrap();
    let (code, report, o) = run(quasistab(&["verify", "--config", cfg.to_str().unwrap()]));
    assert_eq!(code, 2);
    assert_eq!(report["verdict"], "input_error");
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_nonzero_f_at_origin_fails_the_hypothesis() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"space": "reals", "f": {"builtin": "polynomial", "coefficients": [1, 0, 0, 1]}, "m": 2, "L": 0.25,
            "phi": {"kind": "shift_norm", "c": 12}, "grid": {"values": [1, 2]}}"#,
    )
    .unwrap();
    let (code, report, _) = run(quasistab(&["verify", "--config", cfg.to_str().unwrap()]));
    assert_eq!(code, 1, "{report}");
}

#[test]
fn reports_are_reproducible_and_timings_are_opt_in() {
    let a = quasistab(&["verify", "--config", &config("r-cubic.json")]).output().unwrap();
    let b = quasistab(&["verify", "--config", &config("r-cubic.json")]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let (_, report, _) = run(quasistab(&["verify", "--config", &config("r-cubic.json")]));
    assert!(report.get("timings_ms").is_none());
    let (_, report, _) = run(quasistab(&["--timings", "verify", "--config", &config("r-cubic.json")]));
    assert!(report["timings_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn report_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = quasistab(&["verify", "--config", &config("r-cubic.json"), "--report", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["command"], "verify");
}

#[test]
fn fixpoint_outcomes_map_to_exit_codes() {
    let (code, report, _) = run(quasistab(&["fixpoint", "--scenario", "halving", "--tol", "1e-12"]));
    assert_eq!(code, 0);
    assert_eq!(report["result"]["outcome"], "converged");
    let n = report["result"]["iterations"].as_i64().unwrap();
    let bound = report["result"]["error_bound"].as_f64().unwrap();
    assert!(bound >= 2f64.powi(-n as i32));

    let (code, report, _) = run(quasistab(&["fixpoint", "--scenario", "split"]));
    assert_eq!(code, 1);
    assert_eq!(report["result"]["outcome"], "divergent_infinite");

    let (code, report, _) = run(quasistab(&["fixpoint", "--scenario", "halving", "--max-iter", "3"]));
    assert_eq!(code, 1);
    assert_eq!(report["result"]["outcome"], "budget_exhausted");

    let (code, report, _) = run(quasistab(&["fixpoint", "--scenario", "halving", "--L", "0.3"]));
    assert_eq!(code, 1);
    assert_eq!(report["result"]["outcome"], "HypothesisViolation");

    let (code, report, _) = run(quasistab(&["fixpoint", "--scenario", "cubic-operator", "--tol", "1e-12"]));
    assert_eq!(code, 0);
    assert_eq!(report["result"]["iterate"][0], 1.0);

    let (code, _, _) = run(quasistab(&["fixpoint", "--scenario", "halving", "--L", "1"]));
    assert_eq!(code, 2);
    let (code, _, _) = run(quasistab(&["fixpoint", "--scenario", "nonsense"]));
    assert_eq!(code, 2);
}

#[test]
fn tolerance_comes_from_the_environment() {
    let (code, report, _) = run(quasistab(&["fixpoint", "--scenario", "halving"]).env("QUASISTAB_TOL", "1e-3"));
    assert_eq!(code, 0);
    assert_eq!(report["config"]["tol"], 1e-3);
    let (code, _, _) = run(quasistab(&["fixpoint", "--scenario", "halving"]).env("QUASISTAB_TOL", "-1"));
    assert_eq!(code, 2);
}

#[test]
fn example_lhalf_flags_the_legacy_constant() {
    let (code, report, _) = run(quasistab(&["example-lhalf", "--quadrature-n", "256"]));
    assert_eq!(code, 0, "{}", report["error"]);
    let runs = report["result"]["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    for (run, (c, legacy)) in runs.iter().zip([(12.0, 4.0), (48.0, 12.0)]) {
        assert_eq!(run["constants"]["oracle_constant"], c);
        assert_eq!(run["constants"]["legacy_constant"], legacy);
        assert_eq!(run["constants"]["discrepancy"], true);
        assert_eq!(run["certificate"]["passed"], true);
    }
}
