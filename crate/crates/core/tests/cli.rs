//! End-to-end runs of the binary: one JSON document on stdout, exit status
//! reflecting exactness.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cn-mkdv")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("single JSON document")
}

#[test]
fn generate_symbolic_and_specialized() {
    let doc = json(&["generate", "--n", "2", "--J", "0,1"]);
    assert_eq!(doc["k"], serde_json::json!([1, 2, 0]));
    assert_eq!(doc["y"][0], serde_json::json!(["c1", "1"]));
    assert_eq!(doc["wronskian_exact"], true);
    let doc = json(&["generate", "--n", "2", "--J", "0", "--c=-1/2"]);
    assert_eq!(doc["y"][0], serde_json::json!(["-1/2", "1"]));
}

#[test]
fn rejects_non_increasing_sequence() {
    let out = run(&["generate", "--n", "2", "--J", "1,1"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn rejects_wrong_parameter_count() {
    assert!(!run(&["flow", "--n", "2", "--J", "0,1", "--c", "1", "--r", "1"]).status.success());
}

#[test]
fn verify_critical_reports_fertility() {
    let doc = json(&["verify-critical", "--n", "3", "--J", "0,1,2", "--c", "1,2/3,-5"]);
    assert_eq!(doc["fertile"], true);
    assert!(doc["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn miura_routes_agree() {
    let doc = json(&["miura", "--n", "2", "--J", "0", "--c", "2"]);
    assert_eq!(doc["v"].as_array().unwrap().len(), 4);
    assert_eq!(doc["routes_agree"], true);
    let doc = json(&["miura", "--n", "2", "--J", "1"]);
    assert!(doc["routes_agree"].is_null());
}

#[test]
fn flow_and_intertwining() {
    let doc = json(&["flow", "--n", "2", "--J", "0,1", "--c", "1/3,2", "--r", "3"]);
    assert_eq!(doc["tangent"], true);
    let doc = json(&["kdv-check", "--n", "2", "--J", "1", "--c", "3/7", "--r", "1", "--i", "2"]);
    assert_eq!(doc["equal"], true);
    assert!(run(&["flow", "--n", "2", "--J", "0", "--c", "1", "--r", "2"]).status.code() != Some(0));
}

#[test]
fn polynomial_field_report() {
    let doc = json(&["check-theorem81", "--n", "2", "--J", "0,1", "--r", "1"]);
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["gamma"][0], "-1");
    let doc = json(&["check-cell-flow", "--n", "2", "--J", "0,1", "--r", "5", "--samples", "6"]);
    assert_eq!(doc["zero_field"], true);
    assert_eq!(doc["samples"], 6);
}

#[test]
fn matrix_dumps() {
    let doc = json(&["dump-matrices", "--n", "2", "--what", "lambda", "--r", "1"]);
    let cells = &doc["matrices"][0]["entries"];
    // Lambda = e_{1,4} lambda + sum e_{i+1,i}
    assert_eq!(cells[0][3], serde_json::json!([{"lambda_exp": 1, "entry": "1"}]));
    assert_eq!(cells[1][0], serde_json::json!([{"lambda_exp": 0, "entry": "1"}]));
    let doc = json(&["dump-matrices", "--n", "2", "--what", "generators"]);
    assert_eq!(doc["matrices"].as_array().unwrap().len(), 9);
}
