use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-cocycles")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("an error line");
    serde_json::from_str(line).expect("stderr ends with a JSON error")
}

#[test]
fn build_dihedral_algebra() {
    let out = run(&["build-algebra", "--group", "dihedral:12", "--module", "ik:1,6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 96);
    assert_eq!(v["hilbert_series"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["uncapped"], true);
}

#[test]
fn capped_s4_algebra() {
    let out = run(&["build-algebra", "--group", "sym:4", "--rack", "o2:-1", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hilbert_series"], serde_json::json!([1, 6, 19]));
    assert_eq!(v["uncapped"], false);
}

#[test]
fn uncapped_s4_exceeds_budget() {
    let out = run(&["build-algebra", "--group", "sym:4", "--rack", "o2:-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_pair_is_a_validation_error() {
    let out = run(&["build-algebra", "--group", "dihedral:12", "--module", "ik:1,5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error(&out)["error"], "not-in-J");
}

#[test]
fn eq12_on_s4_class_values() {
    let ok = run(&["check", "eq12", "--group", "sym:4", "--rack", "o2:-1", "--beta", "1,1,1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verdict"], true);

    let bad = run(&["check", "eq12", "--group", "sym:4", "--rack", "o2:-1", "--beta", "1,2,1"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["verdict"], false);
    let witness = v["entries"].as_array().unwrap().iter().find(|e| e["pass"] == false).unwrap();
    assert_eq!(witness["counterexample"]["indices"].as_array().unwrap().len(), 4);
}

#[test]
fn mult_cocycle_invariant_and_not() {
    let args = ["check", "mult-cocycle", "--group", "dihedral:12", "--module", "ik:1,6"];
    let ok = run(&args);
    assert_eq!(ok.status.code(), Some(0));

    let mut bad_args = args.to_vec();
    bad_args.push("--non-invariant");
    let bad = run(&bad_args);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e["pass"] == false && e.get("counterexample").is_some()));
}

#[test]
fn commuting_conditions_agree() {
    let out = run(&["check", "commuting", "--group", "sym:3", "--rack", "o2:-1", "--beta", "1,2"]);
    let v = json(&out);
    let pass = |name: &str| v["entries"].as_array().unwrap().iter().find(|e| e["name"] == name).unwrap()["pass"].clone();
    assert_eq!(pass("a"), false);
    assert_eq!(pass("b"), false);
    assert_eq!(pass("c"), false);
    assert_eq!(pass("equivalent"), true);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn theorem_with_single_pair() {
    let out = run(&[
        "verify-theorem", "AI", "--m", "12", "--I", "1,6", "--alpha", "a:1,1,0,0=1", "--alpha", "a:2,2,0,0=1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["overall"], true);
    assert_eq!(v["parameters"]["lambda[(1,6),(1,6)]"], "2");
}

#[test]
fn s3_theorem_with_rational_lambda() {
    let out = run(&["verify-theorem", "S3", "--lambda", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["parameters"]["Gamma"], "1/2");
}

#[test]
fn chi_scan_on_s4() {
    let out = run(&["verify-theorem", "chi-scan", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["only_trivial"], true);
    assert_eq!(v["invariant_dimension"], 2);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("hopf-cocycles-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["--output", path.to_str().unwrap(), "check", "hopf-axioms", "--group", "sym:3", "--rack", "o2:-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
