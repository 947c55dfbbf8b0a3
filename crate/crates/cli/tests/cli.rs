use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ggs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("structured error on stderr")
}

#[test]
fn verify_three_passes() {
    let out = ggs(&["verify", "--n", "3", "--checks", "qybe,hecke,equality"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["triples"].as_array().unwrap().len(), 3);
}

#[test]
fn cg_matrix_matches_ggs_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("ggs.json");
    let b = dir.path().join("cg.json");
    for (which, path) in [("ggs", &a), ("cg", &b)] {
        let out = ggs(&[
            "build",
            "--cg",
            "3",
            "1",
            "--which",
            which,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn corrupted_triple_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triple.json");
    fs::write(
        &path,
        r#"{"n": 4, "gamma1": [1, 2], "gamma2": [2, 3], "t": {"1": 3, "2": 2}}"#,
    )
    .unwrap();
    let out = ggs(&["verify", "--triple", path.to_str().unwrap(), "--checks", "qybe"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "invalid-triple");
    assert!(!err["error"]["details"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triple.json");
    fs::write(&path, "{ not json").unwrap();
    let out = ggs(&["verify", "--triple", path.to_str().unwrap(), "--checks", "qybe"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "parse");
}

#[test]
fn unknown_check_and_bad_cg_fail_cleanly() {
    let out = ggs(&["verify", "--n", "3", "--checks", "qybe,frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ggs(&["build", "--cg", "4", "2", "--which", "cg"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "not-coprime");
}

#[test]
fn oversized_dimension_is_a_resource_error() {
    let out = ggs(&["enumerate", "--n", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "resource-limit");
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = [
        "verify",
        "--n",
        "4",
        "--checks",
        "qybe,equality",
        "--s",
        "random",
        "--seed",
        "11",
    ];
    let a = ggs(&args);
    let b = ggs(&[&args[..], &["--sequential", "--threads", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn triple_file_round_trips_through_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.json");
    let out = ggs(&["enumerate", "--n", "4", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = ggs(&[
        "verify",
        "--triple",
        path.to_str().unwrap(),
        "--checks",
        "epsilon,partition",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn resolver_reports_frozen_record() {
    let out = ggs(&["resolve-conventions", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["resolution"]["selected"], v["frozen"]);
}
