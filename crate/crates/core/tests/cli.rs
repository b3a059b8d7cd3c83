mod common;

use std::process::{Command, Output};

use common::scenario_path;

fn chevnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevnet")).args(args).output().expect("binary runs")
}

#[test]
fn verify_writes_a_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("s1.json");
    let out = chevnet(&[
        "verify",
        scenario_path("s1").to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["scenario"], "S1");
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("jacobson"));
}

#[test]
fn failing_gate_skips_and_exits_zero() {
    let out = chevnet(&["verify", scenario_path("b2_long_f3").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["condition_star"]["holds"], false);
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["status"] == "skipped"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"bad","system":"A2","delta":["a1","-a1"],"ring":{"kind":"zmod","n":4},"net":{},"checks":["no_such_check"]}"#,
    )
    .unwrap();
    assert_eq!(chevnet(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(chevnet(&["verify", "/nonexistent/scenario.json"]).status.code(), Some(2));
    assert_eq!(chevnet(&["tables", "E8"]).status.code(), Some(2));
}

#[test]
fn empty_check_list_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(
        &path,
        r#"{"name":"empty","system":"A2","delta":["a1","-a1"],"ring":{"kind":"zmod","n":4},"net":{},"checks":[]}"#,
    )
    .unwrap();
    let out = chevnet(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["checks"].as_array().unwrap().is_empty());
}

#[test]
fn tables_and_net_close() {
    let out = chevnet(&["tables", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());

    let out = chevnet(&["net-close", scenario_path("s1").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("S1:"));
    assert!(text.contains("a1+a2: (2)"));
}
