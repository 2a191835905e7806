//! End-to-end tests of the binary: output determinism across runs and
//! parallelism settings, cache behavior, exit codes, and the documented
//! output shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lefcount"));
    cmd.args(args);
    cmd.env_remove("LEFCOUNT_CACHE");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("lefcount-cli-tests");
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

#[test]
fn verify_gl_matches_documented_example() {
    let out = run(&["--format", "json", "verify-gl", "x1", "3", "5"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["lhs"], "120");
    assert_eq!(doc["rhs"], "120");
    assert_eq!(doc["match"], true);
}

#[test]
fn fit_matches_documented_example() {
    let out = run(&["--format", "json", "fit", "x1", "5", "2,3,5,7,11,13"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coeffs: Vec<String> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(coeffs, vec!["1", "2", "2", "2", "1", "0"]);
}

#[test]
fn stable_matches_documented_example() {
    let out = run(&["--format", "json", "stable", "quad", "6"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coeffs: Vec<String> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(coeffs, vec!["1", "4", "7", "8", "9", "12"]);
}

#[test]
fn output_is_byte_identical_across_runs_and_parallelism() {
    for format in ["human", "json", "csv"] {
        let first = run(&["--format", format, "verify-gl", "quad", "3", "5"]);
        let again = run(&["--format", format, "verify-gl", "quad", "3", "5"]);
        let parallel = run(&[
            "--format", format, "--jobs", "4", "verify-gl", "quad", "3", "5",
        ]);
        assert_eq!(stdout(&first), stdout(&again), "format = {format}");
        assert_eq!(stdout(&first), stdout(&parallel), "format = {format}");
        assert!(first.status.success());
    }
    let a = run(&["--format", "json", "table-a", "--q", "2", "--n", "4"]);
    let b = run(&["--format", "json", "--jobs", "3", "table-a", "--q", "2", "--n", "4"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(a.status.success());
}

#[test]
fn warm_cache_run_is_identical_to_cold_run() {
    let cache = temp_path("warm-vs-cold.json");
    let _ = std::fs::remove_file(&cache);
    let cache_str = cache.to_str().unwrap();
    let cold = run(&[
        "--format", "json", "--cache", cache_str, "verify-gl", "x1", "2", "5",
    ]);
    assert!(cold.status.success());
    assert!(cache.exists(), "cache file written");
    let warm = run(&[
        "--format", "json", "--cache", cache_str, "verify-gl", "x1", "2", "5",
    ]);
    assert!(warm.status.success());
    assert_eq!(stdout(&cold), stdout(&warm));
    // cache content parses and holds rationals keyed by chi_id:i:n
    let text = std::fs::read_to_string(&cache).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(doc.as_object().unwrap().len() >= 6);
    let _ = std::fs::remove_file(&cache);
}

#[test]
fn cache_path_comes_from_environment_too() {
    let cache = temp_path("env-cache.json");
    let _ = std::fs::remove_file(&cache);
    let out = run_with_env(
        &["--format", "json", "verify-gl", "1", "2", "3"],
        &[("LEFCOUNT_CACHE", cache.to_str().unwrap())],
    );
    assert!(out.status.success());
    assert!(cache.exists(), "cache written at LEFCOUNT_CACHE");
    let _ = std::fs::remove_file(&cache);
}

#[test]
fn exit_codes() {
    // 0: success with all flags true
    let ok = run(&["verify-gl", "sign", "3", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    // 2: usage error (unknown statistic)
    let usage = run(&["verify-gl", "bogus", "3", "4"]);
    assert_eq!(usage.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(&String::from_utf8(usage.stderr).unwrap()).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
    // 2: clap-level usage error
    let missing = run(&["verify-gl"]);
    assert_eq!(missing.status.code(), Some(2));
    // 3: budget exceeded, machine-readable error object
    let budget = run(&["--budget", "10", "verify-gl", "x1", "3", "5"]);
    assert_eq!(budget.status.code(), Some(3));
    let err: serde_json::Value =
        serde_json::from_str(&String::from_utf8(budget.stderr).unwrap()).unwrap();
    assert_eq!(err["error"]["kind"], "budget");
    // 1: a non prime power is a computation failure
    let bad_q = run(&["verify-gl", "x1", "6", "3"]);
    assert_eq!(bad_q.status.code(), Some(1));
}

#[test]
fn flags_can_replace_positionals() {
    let positional = run(&["--format", "json", "verify-gl", "x1", "3", "4"]);
    let flagged = run(&[
        "--format", "json", "verify-gl", "--stat", "x1", "--q", "3", "--n", "4",
    ]);
    assert_eq!(stdout(&positional), stdout(&flagged));
}

#[test]
fn tori_command_cross_checks_against_oracle() {
    let out = run(&["--format", "json", "tori", "chi1", "3", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["value"], "3");
    assert_eq!(doc["brute"], "3");
    assert_eq!(doc["match"], true);
    // out of oracle range: value only
    let big = run(&["--format", "json", "tori", "1", "3", "5"]);
    assert!(big.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&big)).unwrap();
    assert_eq!(doc["brute"], serde_json::Value::Null);
    assert_eq!(doc["value"], "3486784401");
}

#[test]
fn factor_stats_reports_the_intro_tally() {
    // over F_3, degree 3: one polynomial with three linear factors, nine
    // with exactly one, eight with none
    let out = run(&["--format", "json", "factor-stats", "3", "3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["squarefree_total"], 18);
    assert_eq!(doc["linear_factor_histogram"]["3"], 1);
    assert_eq!(doc["linear_factor_histogram"]["1"], 9);
    assert_eq!(doc["linear_factor_histogram"]["0"], 8);
    assert_eq!(doc["linear_factor_total"], 12);
    assert_eq!(doc["moebius_sum"], 0);
    assert_eq!(doc["irreducible_count"], 8);
    assert_eq!(doc["match"], true);
}

#[test]
fn table_a_renders_all_rows() {
    let out = run(&["--format", "json", "table-a", "--q", "3", "--n", "5"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["match"] == true));
    // the documented sample values
    assert_eq!(rows[0]["value"], "162");
    assert_eq!(rows[1]["value"], "20/27");
    let tori_count = rows
        .iter()
        .find(|r| r["side"] == "tori" && r["row"] == 1)
        .unwrap();
    assert_eq!(tori_count["value"], "3486784401");
    // the 4-tori example at (2, 2)
    let small = run(&["--format", "json", "table-a", "--q", "2", "--n", "2"]);
    assert!(small.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&small)).unwrap();
    let tori_count = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["side"] == "tori" && r["row"] == 1)
        .cloned()
        .unwrap();
    assert_eq!(tori_count["value"], "4");
}

#[test]
fn csv_columns_are_stable() {
    let out = run(&["--format", "csv", "verify-gl", "x1", "2", "3"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("command,stat,q,n,lhs,rhs,match"));
    assert_eq!(lines.next(), Some("verify-gl,x1,2,3,2,2,true"));
}

#[test]
fn plambda_and_chik_statistics_parse() {
    let out = run(&["--format", "json", "verify-gl", "plambda:2,1", "3", "4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["match"], true);
    let out = run(&["--format", "json", "verify-gl", "chik:2", "3", "5"]);
    assert!(out.status.success());
}
