//! End-to-end tests of the `isograss` binary: output contracts, exit codes,
//! JSON shapes and determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isograss"))
        .args(args)
        .env_remove("ISOGRASS_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn space_reports_dimension_and_facts() {
    let out = run(&["space", "I:8,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dimension: 11"));
    assert!(text.contains("h4 rank: 1 (generator p1)"));

    let out = run(&["space", "I:4,2"]);
    assert!(stdout(&out).contains("dimension: 3"));

    let out = run(&["space", "RG:8,7"]);
    assert!(stdout(&out).contains("normalized to S:7"));
}

#[test]
fn ring_prints_sieve_presentation() {
    let out = run(&["ring", "I:10,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("relations: c1, p1 + c2, p1*c2"));
    assert!(text.contains("exterior degrees: {5, 9}"));

    let out = run(&["ring", "RG:5,2"]);
    let text = stdout(&out);
    assert!(text.contains("e^2 + p1'"));
    assert!(text.contains("e^2*p1'"));
}

#[test]
fn ring_trace_flags_the_formula_discrepancy() {
    let out = run(&["ring", "I:10,3", "--trace"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("stage i=1"));
    assert!(text.contains("DISCREPANCY FLAGGED"));
    assert!(text.contains("[5, 7, 9]"));
    assert!(text.contains("[5, 9]"));
}

#[test]
fn ring_unsupported_spaces_exit_3() {
    let out = run(&["ring", "RG:6,2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("odd ambient dimension"));

    let out = run(&["ring", "S:7"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["ring", "I:10,5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn poincare_outputs() {
    let out = run(&["poincare", "I:8,2"]);
    let text = stdout(&out);
    assert!(text.contains("1 + x^2 + x^4 + x^5 + x^6 + x^7 + x^9 + x^11"));
    assert!(text.contains("top degree: 11"));
    assert!(text.contains("palindromic: true"));

    let out = run(&["poincare", "I:8,3"]);
    let text = stdout(&out);
    assert!(text.contains("1 + x^5 + x^7 + x^12"));
    assert!(text.contains("top degree: 12"));

    let out = run(&["poincare", "CG:4,2"]);
    let text = stdout(&out);
    assert!(text.contains("1 + x^2 + 2*x^4 + x^6 + x^8"));
    assert!(text.contains("euler characteristic: 6"));
}

#[test]
fn height_command() {
    let out = run(&["height", "I:8,2", "--element", "p1"]);
    let text = stdout(&out);
    assert!(text.contains("height: 1"));
    assert!(text.contains("formula: 1"));
    assert!(text.contains("agree: true"));

    let out = run(&["height", "I:8,2", "--element", "e"]);
    assert!(stdout(&out).contains("height: 3"));

    let out = run(&["height", "I:10,4", "--element", "p1"]);
    let text = stdout(&out);
    assert!(text.contains("height: 0"));
    assert!(text.contains("agree: true"));

    // bad expression is a usage error
    let out = run(&["height", "I:8,2", "--element", "p1^"]);
    assert_eq!(out.status.code(), Some(2));

    // the zero element has height 0 by convention
    let out = run(&["height", "I:8,2", "--element", "c2 + e^2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("height: 0"));

    // a cap too small to certify nilpotence is a verification failure
    let out = run(&["height", "I:8,2", "--element", "e", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn eval_normal_forms() {
    let out = run(&["eval", "I:8,2", "e^4"]);
    let text = stdout(&out);
    assert!(text.contains("normal form: 0"));

    let out = run(&["eval", "I:8,2", "c2"]);
    assert!(stdout(&out).contains("normal form: -e^2"));

    let out = run(&["eval", "I:8,2", "p2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown generator"));
}

#[test]
fn verdict_outputs_and_exit_codes() {
    let out = run(&["verdict", "I:10,3", "I:10,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ForcedZero HeightMismatch(1, 0)"));

    let out = run(&["verdict", "I:4,2", "S:3"]);
    assert!(stdout(&out).contains("AnyDegreePossible"));

    let out = run(&["verdict", "I:10,2", "RG:8,3"]);
    assert!(stdout(&out).contains("ForcedZero HeightMismatch(1, 2)"));

    // equal heights on the smallest collision pair: graded ranks decide
    let out = run(&["verdict", "I:32,3", "I:22,7"]);
    assert!(stdout(&out).contains("ForcedZero RankMismatch(degree 8: 1 < 2)"));
    let out = run(&["verdict", "I:36,10", "I:50,5"]);
    assert!(stdout(&out).contains("NoObstructionDetected"));

    let out = run(&["verdict", "I:10,3", "I:12,3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("dimension 18"));
    assert!(stderr(&out).contains("dimension 24"));

    let out = run(&["verdict", "CG:4,2", "CG:4,2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_specs_are_usage_errors() {
    for bad in ["I:7,3", "I:10", "Q:1,2", "I:10,0", "I:10,6"] {
        let out = run(&["space", bad]);
        assert_eq!(out.status.code(), Some(2), "spec {bad}");
    }
}

#[test]
fn enumerate_lists_pairs() {
    let out = run(&["enumerate", "--family", "iso-iso", "--bound", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("I:10,3 -> I:10,4 dim 18 ForcedZero"));
    assert!(text.contains("0 undetected"));

    let out = run(&["enumerate", "--family", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_at_bound_12() {
    let out = run(&["verify", "--bound", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verification: PASS"));
    assert!(text.contains("0 distinct collisions"));
}

#[test]
fn verify_reports_collisions_at_default_bound() {
    // the default bound (40) is above the first height collision; the run
    // reports it and exits 1
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("I:22,7 vs I:32,3"));
    assert!(text.contains("verification: FAIL"));
}

#[test]
fn bound_env_variable_is_used_and_flag_wins() {
    let out = Command::new(env!("CARGO_BIN_EXE_isograss"))
        .args(["verify"])
        .env("ISOGRASS_BOUND", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Command::new(env!("CARGO_BIN_EXE_isograss"))
        .args(["verify", "--bound", "16"])
        .env("ISOGRASS_BOUND", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "flag overrides the environment");
}

#[test]
fn json_outputs_validate_and_match_text() {
    let out = run(&["--json", "ring", "I:10,3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["format"], "iso-grass/presentation@1");
    assert_eq!(v["space"]["id"], "I:10,3");
    assert_eq!(v["top_degree"], 18);

    let out = run(&["--json", "poincare", "I:8,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["top_degree"], 11);
    assert_eq!(v["coefficients"][11], 1);
    assert_eq!(v["palindromic"], true);

    let out = run(&["--json", "verdict", "I:10,3", "I:10,4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["tag"], "ForcedZero");
    assert_eq!(v["verdict"]["reason"], "HeightMismatch(1, 0)");
    assert_eq!(v["dim"], 18);

    let out = run(&["--json", "verify", "--bound", "12"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["format"], "iso-grass/report@1");
    assert_eq!(v["passed"], true);
    assert!(!v["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn verify_json_is_deterministic() {
    let a = run(&["--json", "verify", "--bound", "12"]);
    let b = run(&["--json", "verify", "--bound", "12"]);
    assert_eq!(stdout(&a), stdout(&b), "byte-identical report");
}
