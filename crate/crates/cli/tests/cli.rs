use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn cubelval(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cubelval"));
    cmd.args(args).env_remove("CUBELVAL_CACHE");
    if let Some(dir) = cache {
        cmd.env("CUBELVAL_CACHE", dir);
    }
    cmd.output().expect("spawn cubelval")
}

fn golden(lambda: u64) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/analyze_{lambda}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_matches_golden() {
    for lambda in [21, 150, 9] {
        let out = cubelval(&["analyze", &lambda.to_string()], None);
        assert_eq!(out.status.code(), Some(0), "λ = {lambda}");
        let got: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(got, golden(lambda), "λ = {lambda}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cubelval(&["analyze", "54"], None).status.code(), Some(2));
    assert_eq!(cubelval(&["analyze", "0"], None).status.code(), Some(2));
    assert_eq!(cubelval(&["analyze", "21", "--bogus"], None).status.code(), Some(2));
    assert_eq!(cubelval(&["--digits", "3", "analyze", "21"], None).status.code(), Some(2));
    assert_eq!(cubelval(&["phi", "45"], None).status.code(), Some(3));
    assert_eq!(cubelval(&["phi", "21"], None).status.code(), Some(0));
}

#[test]
fn descent_report() {
    let out = cubelval(&["descent", "150", "--rank", "0"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["descent"]["sha3_dim"], 2);
    assert_eq!(v["descent"]["bsd_ok"], true);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let t0 = Instant::now();
    let first = cubelval(&["analyze", "99999"], Some(dir.path()));
    let cold = t0.elapsed();
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.path().join("99999-12.bin").exists());

    let t1 = Instant::now();
    let second = cubelval(&["analyze", "99999"], Some(dir.path()));
    let warm = t1.elapsed();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(warm < cold, "warm {warm:?} vs cold {cold:?}");

    // A different precision is a different entry.
    let other = cubelval(&["--digits", "10", "analyze", "99999"], Some(dir.path()));
    assert_eq!(other.status.code(), Some(0));
    assert!(dir.path().join("99999-10.bin").exists());
}

#[test]
fn cache_flag_sets_directory() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("c");
    let out = cubelval(&["--cache", sub.to_str().unwrap(), "analyze", "21"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(sub.join("21-12.bin").exists());
}

#[test]
fn table_reports_the_inconsistent_row() {
    let out = cubelval(&["table"], None);
    assert_eq!(out.status.code(), Some(4));
    let csv = String::from_utf8(out.stdout).unwrap();
    let failed: Vec<&str> = csv.lines().filter(|l| l.ends_with(",false")).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("36072036,"));
}
