use std::process::{Command, Output};

use tempfile::TempDir;

fn run(cache: &TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_almost-convex"))
        .args(args)
        .env("CONVEXITY_CACHE_DIR", cache.path())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn length_prints_geodesic_length() {
    let dir = TempDir::new().unwrap();
    let o = run(&dir, &["length", "--word", "a^16"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n");
}

#[test]
fn normalize_rejects_non_geodesics() {
    let dir = TempDir::new().unwrap();
    let o = run(&dir, &["normalize", "--word", "a^6"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&dir, &["normalize", "--word", "a^4", "--orientation", "np"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class 1"));
}

#[test]
fn notpac_witness_passes() {
    let dir = TempDir::new().unwrap();
    let o = run(&dir, &["witness", "notpac", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound_ok"], true);
}

#[test]
fn case_report_is_json() {
    let dir = TempDir::new().unwrap();
    let o = run(&dir, &["case", "--id", "8.1", "--p", "12", "--k", "2", "--j", "1", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["case"], "8.1");
    assert_eq!(v["checks"]["endpoint"], true);
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&dir, &["length", "--group", "bs:q=1", "--word", "a"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["length", "--word", "x"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["ball", "--group", "stallings", "--r", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&dir, &["case", "--id", "9.2", "--p", "5", "--k", "2", "--i", "1", "--v", "t^5"]).status.code(),
        Some(2)
    );
}

#[test]
fn ball_is_cached_and_output_is_stable() {
    let dir = TempDir::new().unwrap();
    let first = run(&dir, &["ball", "--group", "bs:q=2", "--r", "5"]);
    assert_eq!(first.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&first.stderr).starts_with("wrote"));
    let second = run(&dir, &["ball", "--group", "bs:q=2", "--r", "5"]);
    assert!(String::from_utf8_lossy(&second.stderr).starts_with("loaded"));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("r,sphere\n0,1\n1,4\n"));
}

#[test]
fn scan_formats() {
    let dir = TempDir::new().unwrap();
    let csv = run(&dir, &["scan", "--group", "bs:q=2", "--r", "4"]);
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout(&csv).lines().count(), 5);
    let nd = run(&dir, &["scan", "--group", "bs:q=2", "--r", "4", "--format", "ndjson"]);
    for line in stdout(&nd).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("r").is_some());
    }
    let out = dir.path().join("scan.txt");
    let o = run(&dir, &["scan", "--group", "bs:q=2", "--r", "4", "--format", "text", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(out).unwrap().contains("fmax="));
}
