use std::process::{Command, Output};

use polyshadow::report::VerificationReport;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polyshadow"));
    c.env_remove("POLYSHADOW_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run binary")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing {key} in {v}"))
}

#[test]
fn simplex_volume_example() {
    let v = json(&["volume", "simplex", "--n", "3", "--direction", "1,-1,0,0", "--oracle"]);
    assert!((num(&v, "volume") - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((num(&v, "oracle") - 0.5f64.sqrt()).abs() < 1e-9);

    let e1 = json(&["volume", "simplex", "--n", "3", "--direction", "3,-1,-1,-1"]);
    assert!((num(&e1, "volume") - 3f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn cube_examples() {
    let v = json(&["volume", "cube", "--n", "4", "--direction", "1,1,1,1"]);
    assert!((num(&v, "volume") - 2.0).abs() < 1e-12);
    let p = json(&["volume", "cube", "--n", "5", "--planar", "--pair", "e1,e2"]);
    assert_eq!(num(&p, "volume"), 1.0);
    let t = json(&["volume", "cube", "--n", "3", "--planar", "--pair", "trig", "--oracle"]);
    assert!((num(&t, "volume") - 3f64.sqrt()).abs() < 1e-12);
    assert!((num(&t, "oracle") - 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn extremal_examples() {
    let v = json(&["extremal", "simplex-proj", "--n", "5"]);
    assert!((num(&v, "min") - 6f64.sqrt() / (2f64.sqrt() * 24.0)).abs() < 1e-12);
    assert!((num(&v, "max") - 0.125).abs() < 1e-12);

    let f = json(&["extremal", "fp", "-m", "4", "--p", "3"]);
    assert!((num(&f, "min") - 0.5).abs() < 1e-12);
    assert!((num(&f, "max") - 1.0).abs() < 1e-12);

    let n = json(&["extremal", "simplex-proj", "--n", "3", "--numeric", "--restarts", "50"]);
    assert!(num(&n, "gap_min").abs() < 1e-6);
    assert!(num(&n, "gap_max").abs() < 1e-6);
}

#[test]
fn lp_examples() {
    let c = json(&["lp", "cross", "--n", "3", "--p", "1", "--direction", "e1"]);
    assert!((num(&c, "h_p") - 2.0).abs() < 1e-12);
    let q = json(&["lp", "cube", "--n", "6", "--p", "2"]);
    assert!((num(&q, "h_p") - 2.0).abs() < 1e-12);
    let mc = json(&["lp", "cross", "--n", "4", "--p", "1.5", "--mode", "mc", "--samples", "20000"]);
    assert!(num(&mc, "moment_stderr") > 0.0);
}

#[test]
fn section_example_and_emit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly.csv");
    let v = json(&["section", "--n", "3", "--pair", "trig", "--emit", path.to_str().unwrap()]);
    assert_eq!(v["vertices"], 6);
    assert!(num(&v, "nazarov_margin").abs() < 1e-9);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,t"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["volume", "simplex", "--n", "3", "--direction", "1,0,0,0"][..],
        &["volume", "dodecahedron", "--n", "3"],
        &["volume", "cube", "--n", "3", "--direction", "1,2"],
        &["extremal", "fp", "-m", "4", "--p", "2"],
        &["lp", "cube", "--n", "3", "--p", "0.5"],
        &["verify", "width", "--n", "99"],
        &["section", "--n", "3", "--pair", "e1,e1"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn project_zero_sum_flag() {
    let out = run(&["volume", "simplex", "--n", "3", "--direction", "1,0,0,0", "--project-zero-sum"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["--seed", "11", "verify", "fp", "--n", "3..4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("seed    11"));
    let text = std::fs::read_to_string(&path).unwrap();
    let report = VerificationReport::from_json(&text).unwrap();
    assert!(report.passed);
    assert_eq!(report.seed.0, 11);
    assert_eq!(report.wall_time_s, 0.0);
    assert_eq!(format!("{}\n", report.to_json()), text);
}

#[test]
fn csv_output() {
    let out = run(&["--format", "csv", "volume", "cube", "--n", "2", "--direction", "e1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), row.len());
    let i = header.iter().position(|h| *h == "volume").unwrap();
    assert_eq!(row[i].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn seed_from_environment() {
    let a = bin()
        .env("POLYSHADOW_SEED", "42")
        .args(["--format", "json", "lp", "cube", "--n", "4", "--p", "3"])
        .output()
        .unwrap();
    let b = run(&["--seed", "42", "--format", "json", "lp", "cube", "--n", "4", "--p", "3"]);
    let c = run(&["--format", "json", "lp", "cube", "--n", "4", "--p", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 42);
}
