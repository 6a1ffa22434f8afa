//! End-to-end checks of the command surface: exit codes, JSON shape,
//! round-tripping, and determinism of seeded runs.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kextremal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout_json_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|line| serde_json::from_str(line).expect("valid JSON line"))
        .collect()
}

#[test]
fn ktori_list_matches_catalog() {
    let output = run(&["ktori", "list", "--n", "10", "--k", "1"]);
    assert!(output.status.success());
    let records = stdout_json_lines(&output);
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["count"], 5);
    let tori = records[0]["tori"].as_array().unwrap();
    let ms: Vec<i64> = tori
        .iter()
        .map(|t| t["torus"]["m"].as_i64().unwrap())
        .collect();
    assert_eq!(ms, vec![3, 4, 5, 6, 7]);
    assert!(tori.iter().all(|t| t["identity_ok"] == true));
}

#[test]
fn iso_classify_g6_reports_exact_lambda() {
    let output = run(&["iso", "classify", "--g", "6", "--mult", "1", "--k", "1"]);
    assert!(output.status.success());
    let records = stdout_json_lines(&output);
    let unique = &records[0]["classification"]["Unique"];
    assert_eq!(unique["lambda1"]["repr"], "2+1*sqrt(3)");
    assert_eq!(unique["lambda1"]["exact"], true);
    assert_eq!(records[0]["minimal"], true);
}

#[test]
fn iso_residual_detects_extremal_spectrum() {
    let output = run(&[
        "iso", "residual", "--spectrum", "1:2,-1:2", "--k", "3/2",
    ]);
    assert!(output.status.success());
    let records = stdout_json_lines(&output);
    assert_eq!(records[0]["extremal"], true);
}

#[test]
fn model_check_veronese() {
    let output = run(&["model", "check", "--model", "veronese", "--k", "1"]);
    assert!(output.status.success());
    let records = stdout_json_lines(&output);
    assert_eq!(records[0]["extremal"], true);
    assert_eq!(records[0]["report"]["scal_verdict"], "saturated");
    assert_eq!(records[0]["report"]["c3"]["repr"], "4/3");
}

#[test]
fn bounds_emit_exact_scalars() {
    let output = run(&[
        "bounds", "--n", "4", "--p", "1", "--k", "2", "--H", "1", "--rho", "0",
    ]);
    assert!(output.status.success());
    let records = stdout_json_lines(&output);
    assert_eq!(records[0]["c1"]["repr"], "1");
    assert_eq!(records[0]["c1"]["exact"], true);
    assert_eq!(records[0]["c2"]["repr"], "5");
}

#[test]
fn epsilon_ricci_worked_example() {
    let output = run(&[
        "epsilon", "--variant", "ricci", "--n", "4", "--p", "1", "--k", "1",
        "--H0", "0", "--delta0", "1",
    ]);
    assert!(output.status.success());
    let records = stdout_json_lines(&output);
    let t = records[0]["t"].as_f64().unwrap();
    assert!((t - 1.0 / 24.0).abs() < 1e-15);
    assert!(records[0]["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_lemmas_is_deterministic() {
    let args = [
        "verify", "lemmas", "--trials", "150", "--seed", "42",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same seed must give identical bytes");
    let records = stdout_json_lines(&first);
    assert_eq!(records.len(), 13);
    assert!(records.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_lemmas_reads_seed_from_env() {
    let with_env = bin()
        .args(["verify", "lemmas", "--trials", "60"])
        .env("KEXTREMAL_SEED", "99")
        .output()
        .unwrap();
    let with_flag = run(&["verify", "lemmas", "--trials", "60", "--seed", "99"]);
    assert_eq!(with_env.stdout, with_flag.stdout);
}

#[test]
fn json_round_trips_byte_identically() {
    let output = run(&["model", "check", "--model", "clifford:2,2", "--k", "1"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    for line in text.lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), line);
    }
}

#[test]
fn parameter_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["ktori", "list", "--n", "10", "--k", "1/2"],
        &["model", "check", "--model", "moebius", "--k", "1"],
        &["model", "check", "--model", "torus:8,1", "--k", "3"],
        &["iso", "classify", "--g", "5", "--mult", "1", "--k", "1"],
        &["iso", "classify", "--g", "6", "--mult", "3", "--k", "1"],
        &["epsilon", "--variant", "bogus", "--n", "4", "--p", "1", "--k", "1", "--H0", "0", "--delta0", "1"],
        &["bounds", "--n", "4", "--p", "1"],
    ];
    for args in cases {
        let output = run(args);
        assert_eq!(output.status.code(), Some(1), "args: {args:?}");
        assert!(!output.stderr.is_empty());
    }
}

#[test]
fn rejected_torus_names_the_window() {
    let output = run(&["model", "check", "--model", "torus:8,1", "--k", "3"]);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("n-2k < m < 2k"), "stderr: {stderr}");
}

#[test]
fn table_mode_renders_same_content() {
    let output = run(&[
        "bounds", "--n", "4", "--p", "2", "--k", "1", "--H", "0", "--rho", "1", "--format", "table",
    ]);
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.lines().any(|l| l.starts_with("c3.repr = ")));
}
