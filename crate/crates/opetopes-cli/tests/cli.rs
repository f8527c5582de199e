//! End-to-end tests of the command-line surface: subcommands, exit codes,
//! and determinism of outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../opetopes/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opetopes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn validate_fixture_complex_is_ok() {
    let out = run(&["validate", fixture("table1.odc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kind"], "complex");
    assert_eq!(report["level"], "reduced");
    assert_eq!(report["valid"], true);
    assert_eq!(report["flags"]["atomic_dim"], 5);
    assert_eq!(report["modes"]["unital_fast"], true);
}

#[test]
fn validate_fixture_sequence_is_ok() {
    let out = run(&["validate", fixture("figure1.ops").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kind"], "sequence");
    assert_eq!(report["level"], "opetope");
    assert_eq!(report["dim"], 5);
}

#[test]
fn validate_reports_invalid_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unreduced.odc");
    // opetopic but not reduced: a path of two thin 1-cells under a 2-cell,
    // so neither thin element is the exact negative face of anything
    std::fs::write(
        &path,
        r#"{
  "name": "unreduced",
  "basis": [
    {"id": "x", "dim": 0},
    {"id": "y", "dim": 0},
    {"id": "z", "dim": 0},
    {"id": "t1", "dim": 1, "thin": true, "d_minus": [["x", 1]], "d_plus": [["y", 1]]},
    {"id": "t2", "dim": 1, "thin": true, "d_minus": [["y", 1]], "d_plus": [["z", 1]]},
    {"id": "s", "dim": 1, "d_minus": [["x", 1]], "d_plus": [["z", 1]]},
    {"id": "b", "dim": 2, "d_minus": [["t1", 1], ["t2", 1]], "d_plus": [["s", 1]]}
  ]
}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap(), "--level", "reduced"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["valid"], false);
    assert_eq!(report["flags"]["opetopic"], true);
    // the same file passes at the opetopic level
    let out = run(&["validate", path.to_str().unwrap(), "--level", "opetopic"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.odc");
    std::fs::write(&path, "not json at all").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // missing file too
    let out = run(&["validate", dir.path().join("absent.odc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // usage errors come from the argument parser
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn networks_then_complex_then_iso_closes_the_loop() {
    let dir = tempfile::tempdir().unwrap();
    let seq_path = dir.path().join("t.ops");
    let cx_path = dir.path().join("t.odc");
    let out = run(&[
        "networks",
        fixture("table1.odc").to_str().unwrap(),
        "-o",
        seq_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "complex",
        seq_path.to_str().unwrap(),
        "-o",
        cx_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "iso",
        fixture("table1.odc").to_str().unwrap(),
        cx_path.to_str().unwrap(),
        "--kind",
        "complex",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["isomorphic"], true);
}

#[test]
fn iso_of_sequences_matches_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let seq_path = dir.path().join("t.ops");
    run(&[
        "networks",
        fixture("table1.odc").to_str().unwrap(),
        "-o",
        seq_path.to_str().unwrap(),
    ]);
    let out = run(&[
        "iso",
        fixture("figure1.ops").to_str().unwrap(),
        seq_path.to_str().unwrap(),
        "--kind",
        "sequence",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn iso_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let point = dir.path().join("point.odc");
    std::fs::write(&point, r#"{"name":"p","basis":[{"id":"p","dim":0}]}"#).unwrap();
    let out = run(&[
        "iso",
        fixture("table1.odc").to_str().unwrap(),
        point.to_str().unwrap(),
        "--kind",
        "complex",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["isomorphic"], false);
}

#[test]
fn atom_prints_six_levels() {
    let out = run(&["atom", fixture("table1.odc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let levels: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(levels.as_array().unwrap().len(), 6);
    assert_eq!(levels[5]["minus"][0][0], "a17");
}

#[test]
fn source_target_reduce_roundtrip() {
    let table1 = fixture("table1.odc");
    let out = run(&["source", table1.to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let docs: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(docs.as_array().unwrap().len(), 4);

    let out = run(&["source", table1.to_str().unwrap(), "--index", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"a13\""));

    let out = run(&["source", table1.to_str().unwrap(), "--index", "9"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["target", table1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"b17\""));

    let out = run(&["reduce", table1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // already reduced: the output parses back to the same complex
    let dir = tempfile::tempdir().unwrap();
    let reduced = dir.path().join("r.odc");
    std::fs::write(&reduced, stdout(&out)).unwrap();
    let out = run(&[
        "iso",
        table1.to_str().unwrap(),
        reduced.to_str().unwrap(),
        "--kind",
        "complex",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gen_is_deterministic_and_valid() {
    let args = ["gen", "--seed", "7", "--max-dim", "4", "--budget", "30"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.ops");
    std::fs::write(&path, stdout(&a)).unwrap();
    let out = run(&["validate", path.to_str().unwrap(), "--level", "opetope"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dot_renders_both_document_kinds_deterministically() {
    let a = run(&["dot", fixture("figure1.ops").to_str().unwrap()]);
    let b = run(&["dot", fixture("figure1.ops").to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).matches("subgraph cluster_").count(), 6);

    let c = run(&["dot", fixture("table1.odc").to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(stdout(&c).matches("subgraph cluster_").count(), 6);
}
