//! End-to-end golden tests: every pinned example runs through the real
//! binary and must reproduce its serialized report byte for byte.

use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_case(name: &str) {
    let dir = golden_dir();
    let command = std::fs::read_to_string(dir.join(format!("{name}.cmd"))).unwrap();
    let args: Vec<&str> = command.split_whitespace().collect();
    let output = Command::new(env!("CARGO_BIN_EXE_seminorm"))
        .args(&args)
        .arg("--input")
        .arg(dir.join(format!("{name}.input.json")))
        .output()
        .expect("binary runs");
    let expected = std::fs::read_to_string(dir.join(format!("{name}.expected.json"))).unwrap();
    let actual = String::from_utf8(output.stdout).unwrap();
    assert_eq!(actual, expected, "golden mismatch for {name}");
    let expected_json: serde_json::Value = serde_json::from_str(&expected).unwrap();
    let code = output.status.code().unwrap();
    match expected_json["status"].as_str().unwrap() {
        "ok" => assert_eq!(code, 0),
        "inconclusive" => assert_eq!(code, 2),
        _ => assert_eq!(code, 1),
    }
}

#[test]
fn golden_running_weak_closure() {
    run_case("running-weak-closure");
}

#[test]
fn golden_running_weak_closure_char2() {
    run_case("running-weak-closure-char2");
}

#[test]
fn golden_running_integral_closure() {
    run_case("running-integral-closure");
}

#[test]
fn golden_running_i_greater() {
    run_case("running-i-greater");
}

#[test]
fn golden_running_rees() {
    run_case("running-rees");
}

#[test]
fn golden_running_samuel() {
    run_case("running-samuel");
}

#[test]
fn golden_ratliff_rush() {
    run_case("rr-staircase");
}

#[test]
fn golden_semigroup_weak_normalize() {
    run_case("semigroup-weak-normalize");
}

#[test]
fn golden_semigroup_seminormalize() {
    run_case("semigroup-seminormalize");
}

#[test]
fn golden_whitney_monoid() {
    run_case("whitney-monoid");
}

#[test]
fn golden_curve_node() {
    run_case("curve-node");
}

#[test]
fn golden_curve_tacnode() {
    run_case("curve-tacnode");
}

#[test]
fn golden_swan_witness() {
    run_case("swan-witness");
}

#[test]
fn golden_derive_characteristic_poly() {
    run_case("derive-F");
}

#[test]
fn inconclusive_runs_exit_with_code_two() {
    let output = Command::new(env!("CARGO_BIN_EXE_seminorm"))
        .args(["ideal", "ratliff-rush", "--horizon", "1"])
        .arg("--input")
        .arg(golden_dir().join("rr-staircase.input.json"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["status"], "inconclusive");
    assert_eq!(report["flags"]["horizon_exhausted"], true);
}

#[test]
fn schema_violations_exit_with_code_one() {
    let output = Command::new(env!("CARGO_BIN_EXE_seminorm"))
        .args(["ideal", "samuel", "--char", "6"])
        .arg("--input")
        .arg(golden_dir().join("running-rees.input.json"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["status"], "error");
    assert!(report["errors"].as_array().unwrap().len() >= 2);
}

#[test]
fn flag_overrides_reach_the_request() {
    // --horizon affects the ratliff-rush run even when the document has
    // its own options.
    let output = Command::new(env!("CARGO_BIN_EXE_seminorm"))
        .args(["ideal", "ratliff-rush", "--horizon", "3"])
        .arg("--input")
        .arg(golden_dir().join("rr-staircase.input.json"))
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["result"]["horizon"], 3);
    assert_eq!(report["input"]["options"]["horizon"], 3);
}
