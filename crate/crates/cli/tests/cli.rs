use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wgkmer"))
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const FIG1_DNF: &str = "DNF 1\n3 3\n1 3\n-1 2\n-1 -3\n";
const SELFLOOP: &str = "WGF 1\n1 1\n1 1 a\n";
const CYCLE: &str = "WGF 1\n2 2\n1 2 b\n2 1 a\n";

#[test]
fn gadget_pipeline_reproduces_model_count() {
    let dir = tempfile::tempdir().unwrap();
    let dnf = write(dir.path(), "fig1.dnf", FIG1_DNF);
    let wgf = dir.path().join("fig1.wgf");

    let out = bin()
        .args(["gadget", "build", &dnf, "-o", wgf.to_str().unwrap()])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["d"], serde_json::json!([1, 0, 1]));

    let out = bin()
        .args(["count", "-k", "3", "--algo", "brute", wgf.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["total"], "10");

    for algo in ["brute", "layered"] {
        let out = bin().args(["gadget", "solve", "--algo", algo, &dnf]).output().unwrap();
        assert!(out.status.success());
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "5");
    }
}

#[test]
fn count_engines_agree_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let wgf = write(dir.path(), "g.wgf", SELFLOOP);
    let out = bin().args(["count", "-k", "5", "--algo", "dp", &wgf]).output().unwrap();
    assert_eq!(stdout_json(&out)["total"], "1");

    let wgf = write(dir.path(), "c.wgf", CYCLE);
    let mut totals = Vec::new();
    for algo in ["dp", "doubling", "brute"] {
        let out = bin().args(["count", "-k", "7", "--algo", algo, &wgf]).output().unwrap();
        totals.push(stdout_json(&out)["total"].as_str().unwrap().to_string());
    }
    assert!(totals.iter().all(|t| t == "2"), "{totals:?}");
}

#[test]
fn validate_exit_codes_and_json_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.wgf", CYCLE);
    assert!(bin().args(["validate", &good]).output().unwrap().status.success());

    let bad = write(dir.path(), "bad.wgf", "WGF 1\n2 2\n2 1 b\n1 2 a\n");
    let out = bin().args(["validate", &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("W1"));

    let out = bin().args(["--json-errors", "validate", &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "format");
}

#[test]
fn oracle_cap_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let wgf = write(dir.path(), "g.wgf", SELFLOOP);
    let out = bin()
        .env("KMERGRAPH_ORACLE_CAP", "0")
        .args(["count", "-k", "3", "--algo", "brute", &wgf])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "cap exceeded exits 2");
    let out = bin()
        .env("KMERGRAPH_ORACLE_CAP", "0")
        .args(["--oracle-cap", "100", "count", "-k", "3", "--algo", "brute", &wgf])
        .output()
        .unwrap();
    assert!(out.status.success(), "flag overrides the environment");
}

#[test]
fn dbg_query_walk_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let wgf = write(dir.path(), "c.wgf", CYCLE);
    let out = bin().args(["dbg", "-k", "2", &wgf, "--query", "ab"]).output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["present"], true);
    assert_eq!(v["u"], 2);
    assert_eq!(v["j"], "1");

    let out = bin().args(["dbg", "-k", "2", &wgf, "--query", "aa"]).output().unwrap();
    assert_eq!(stdout_json(&out)["present"], false);

    let export = dir.path().join("out.dbg");
    let out = bin()
        .args(["dbg", "-k", "2", &wgf, "--export", export.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = fs::read_to_string(&export).unwrap();
    assert_eq!(text, "DBG 2 2 2\nba\nab\n1 2 b\n2 1 a\n");

    let out = bin().args(["dbg", "-k", "2", &wgf, "--walk", "ab", "ab"]).output().unwrap();
    assert!(out.status.success());
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().trim().lines().collect();
    assert_eq!(lines.len(), 3, "start, one step, one failed step");
}

#[test]
fn unfold_then_layered_count_matches_brute() {
    let dir = tempfile::tempdir().unwrap();
    let wgf = write(dir.path(), "c.wgf", CYCLE);
    let unfolded = dir.path().join("unf.wgf");
    let out = bin()
        .args(["unfold", "-k", "3", &wgf, "-o", unfolded.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin().args(["count-layered", "-k", "3", &wgf]).output().unwrap();
    assert_eq!(stdout_json(&out)["total"], "2");
}

#[test]
fn selftest_runs_clean() {
    let out = bin().args(["selftest", "--seed", "3", "--instances", "12"]).output().unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["status"], "ok");
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.wgf", "WGF 1\n2 1\n3 1 a\n");
    let out = bin().args(["validate", &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex index out of range, line 3"));
}
