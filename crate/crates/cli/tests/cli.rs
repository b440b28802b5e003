use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spechtvar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn info_reports_core_weight_and_dimension() {
    let v = json(&["info", "--mu", "(3,3,2)", "--p", "3"]);
    assert_eq!(v["core"], "(3,1,1)");
    assert_eq!(v["weight"], 1);
    assert_eq!(v["dim"], "42");
    assert_eq!(v["config"]["p"], 3);
}

#[test]
fn phi_chain_and_hypothesis() {
    let v = json(&["phi", "--mu", "(4,3,2)", "--p", "3"]);
    let chain: Vec<&str> = v["phi_chain"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(chain, ["(4,3,2)", "(4,4,1)", "(5,4)", "(6,3)"]);
    assert_eq!(v["Phi"], "(6,3)");
    assert_eq!(v["hypothesis"], "H2");
}

#[test]
fn table9_matches_golden() {
    let out = run(&["table9", "--threads", "4"]);
    assert!(out.status.success());
    let golden = include_str!("golden/table9.tsv");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
    assert_eq!(golden.lines().count(), 17);
    assert!(golden.lines().skip(1).all(|l| l.ends_with("\ttrue")));
}

#[test]
fn jordan_output_is_deterministic() {
    let args = ["jordan", "--mu", "(6,3)", "--p", "3", "--seed", "7", "--samples", "3"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["stable"], "(2^1,1^1)");
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["mode"], "random");
}

#[test]
fn jordan_at_point_and_exact_mode() {
    let v = json(&["jordan", "--mu", "(3,3)", "--p", "3", "--alpha", "1,0"]);
    assert_eq!(v["free"], false);
    let v = json(&["jordan", "--mu", "(4,2)", "--p", "2", "--mode", "exact"]);
    assert_eq!(v["report"]["mode"], "exact");
}

#[test]
fn variety_tsv_lists_every_projective_point() {
    let out = run(&["variety", "--mu", "(3,3)", "--p", "3", "--ext", "2", "--out", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1\tx2\tfree\tranks"));
    // P^1(GF(9)) has 10 points
    assert_eq!(lines.count(), 10);
}

#[test]
fn variety_json_classifies() {
    let v = json(&["variety", "--mu", "(5,3,1)", "--p", "3"]);
    assert_eq!(v["class"]["kind"], "zero");
    assert_eq!(v["config"]["ext_degree"], 3);
}

#[test]
fn young_summands() {
    let v = json(&["young", "--r", "9", "--m", "3", "--p", "3"]);
    assert_eq!(v["summands"]["s_values"], serde_json::json!([2, 3]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["info", "--mu", "(2,3)", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["info", "--mu", "(3)", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["jordan", "--mu", "(4,3)", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["jordan", "--mu", "(7)", "--p", "7"]).status.code(), Some(2));
    assert_eq!(run(&["jordan", "--mu", "(3)", "--p", "3", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn computational_errors_exit_one() {
    let out = run(&["jordan", "--mu", "(6,3)", "--p", "3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cache_dir_is_populated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["jordan", "--mu", "(4,2)", "--p", "2", "--cache-dir", path];
    let first = run(&args);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_single_check() {
    let out = run(&["verify", "--only", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS [7]"));
}
