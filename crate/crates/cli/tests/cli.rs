use std::process::Command;

use serde_json::Value;
use unramified_cli::{run_args, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION};

fn run(args: &[&str]) -> unramified_cli::Outcome {
    run_args(std::iter::once("unramified").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&run(&full).stdout).unwrap()
}

#[test]
fn h1_over_f7_mod_2() {
    let v = json(&["unramified", "--q", "7", "--m", "2", "--i", "1"]);
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["result"]["factors"], serde_json::json!([2]));
    assert_eq!(v["config"]["q"], 7);
}

#[test]
fn h2_over_f7_vanishes() {
    let v = json(&["unramified", "--q", "7", "--m", "2", "--i", "2"]);
    assert_eq!(v["result"]["order"], 1);
    assert_eq!(v["result"]["factors"], serde_json::json!([]));
}

#[test]
fn twist_mismatch_is_a_precondition_failure() {
    let out = run(&["unramified", "--q", "7", "--m", "5", "--i", "1"]);
    assert_eq!(out.code, EXIT_PRECONDITION);
    assert!(out.stderr.contains("TwistMismatch"));
}

#[test]
fn residues_of_t_and_t_minus_one() {
    let at_t = json(&["residue", "--q", "7", "--m", "2", "--at", "t", "{t, t-1}"]);
    assert_eq!(at_t["result"]["trivial"], false);
    assert_eq!(at_t["result"]["value"], 1);
    let at_one = json(&["residue", "--at", "t-1", "{t, t-1}"]);
    assert_eq!(at_one["result"]["trivial"], true);
}

#[test]
fn malformed_symbol_reports_column() {
    let out = run(&["residue", "--at", "t", "{t,"]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("ParseError"));
    let v = json(&["residue", "--at", "t", "{t,"]);
    assert_eq!(v["error"]["column"], 3);
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "lemma42", "--trials", "100", "--seed", "42"]);
    assert_eq!(v["result"]["passed"], 100);
    let v = json(&["verify", "reciprocity", "--trials", "1000"]);
    assert_eq!(v["result"]["passed"], 1000);
    let out = run(&["verify", "snf", "--trials", "0"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("0/0"));
}

#[test]
fn unknown_suite() {
    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.code, EXIT_PRECONDITION);
    assert!(out.stderr.contains("UnknownSuite"));
}

#[test]
fn reports_are_byte_identical() {
    for suite in ["pages", "units", "complex"] {
        let args = ["verify", suite, "--trials", "20", "--seed", "9", "--format", "json"];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn pages_from_file() {
    let dir = std::env::temp_dir().join(format!("unramified-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("complex.json");
    std::fs::write(
        &path,
        r#"{"m":4,"dims":[1,1],"differentials":[[[2]]],"filtration":[[[0]],[[0],[0]]]}"#,
    )
    .unwrap();
    let v = json(&["pages", path.to_str().unwrap(), "--r", "2"]);
    assert_eq!(v["result"]["convergence"], true);
    assert_eq!(v["result"]["cohomology"], serde_json::json!([[2], [2]]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_unramified");
    let ok = Command::new(bin).args(["unramified", "--q", "5", "--m", "4", "--i", "1", "-D", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("order: 4"));
    let parse = Command::new(bin).args(["residue", "--at", "t", "{t,"]).output().unwrap();
    assert_eq!(parse.status.code(), Some(4));
    let bad = Command::new(bin).args(["unramified", "--q", "6", "--m", "1", "--i", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
