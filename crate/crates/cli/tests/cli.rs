//! Exit codes, report formats and `dump` through the built binary.

use std::process::{Command, Output};

use serde_json::Value;

fn interlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interlab"))
        .args(args)
        .env_remove("INTERLAB_CAP_ATOMS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn gadget_report_at_m4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = interlab(&["gadget", "--m", "4", "--g", "0", "--cases", "10", "--out", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cells = report["gadget"]["essproj"].as_array().unwrap();
    assert_eq!(cells.len(), 16);
    assert!(cells.iter().all(|c| c["pass"] == true));
    assert_eq!(report["summary"]["failed"], 0);
}

#[test]
fn lemma_reports_are_deterministic() {
    let args = ["lemmas", "--cases", "100", "--seed", "42", "--max-atoms", "4", "--format", "json"];
    let first = interlab(&args);
    let second = interlab(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(json(&first)["checks"].as_array().unwrap().len() >= 6);
}

#[test]
fn timings_only_when_asked() {
    let args = ["lemmas", "--cases", "20", "--max-atoms", "3", "--format", "json"];
    let plain = json(&interlab(&args));
    assert!(plain["checks"][0].get("duration_ms").is_none());
    let timed = json(&interlab(&[&args[..], &["--timings"]].concat()));
    assert!(timed["checks"][0]["duration_ms"].is_u64());
}

#[test]
fn oversized_gadget_is_a_config_error() {
    let out = interlab(&["gadget", "--m", "99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn cap_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_interlab"))
        .args(["dump", "free:4"])
        .env("INTERLAB_CAP_ATOMS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(interlab(&["everything"]).status.code(), Some(2));
}

#[test]
fn dump_free_algebra() {
    let out = interlab(&["dump", "free:2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["atom_count"], 4);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fr_0") && text.contains("fr_1"));
}

#[test]
fn dump_gadget_names() {
    let out = interlab(&["dump", "gadget:1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["b0[0]", "b0[1]", "b1[0]", "h0", "h1"] {
        assert!(text.contains(&format!("\"{name}\"")), "missing {name}");
    }
}

#[test]
fn dump_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gadget.json");
    let first = interlab(&["dump", "gadget:1,1", "--out", path.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    let again = interlab(&["dump", path.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(again.stdout, std::fs::read(&path).unwrap());
}

#[test]
fn bad_source_reports_the_position() {
    let out = interlab(&["dump", "free:3x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('6'));
}
