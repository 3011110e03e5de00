use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_selfdual"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn stickelberger_indices() {
    let (code, v) = run_json(&["stickelberger", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["outputs"]["index"], 3);
    assert_eq!(run_json(&["stickelberger", "1"]).1["outputs"]["index"], 1);
    let (_, v) = run_json(&["stickelberger", "2,4"]);
    assert_eq!(v["outputs"]["basis"].as_array().unwrap().len(), 8);
    assert_eq!(v["outputs"]["index"], 8);
}

#[test]
fn malformed_group_is_a_usage_error() {
    assert_eq!(run(&["stickelberger", "2,x"]).0, 2);
    assert_eq!(run(&["stickelberger", "2,3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn swan_certificates() {
    let (code, v) = run_json(&["swan", "2", "--gen", "1", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["pass"], true);
    assert_eq!(v["outputs"]["index"], 3);
    let (code, v) = run_json(&["swan", "6", "--gen", "3", "--r", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["pass"], true);
    let (code, v) = run_json(&["swan", "2,2", "--gen", "1,0", "--r=-3"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["pass"], true);
}

#[test]
fn swan_gcd_violation_is_a_domain_error() {
    let (code, v) = run_json(&["swan", "2", "--gen", "1", "--r", "2"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "domain_error");
    assert!(v.get("outputs").is_none());
}

#[test]
fn search_examples() {
    let (_, v) = run_json(&["search", "4", "100"]);
    assert_eq!(v["outputs"]["primes"], serde_json::json!([7, 23, 31, 47, 71, 79]));
    let (_, v) = run_json(&["search", "4", "100", "--field", "-1"]);
    assert_eq!(v["outputs"]["primes"], serde_json::json!([7, 23, 31, 47, 71, 79]));
    assert_eq!(v["outputs"]["all_have_order_four"], true);
    let (_, v) = run_json(&["search", "3", "20"]);
    assert_eq!(v["outputs"]["primes"], serde_json::json!([]));
}

#[test]
fn residue_bound_is_a_resource_error() {
    let (code, v) = run_json(&["search", "4", "100", "--field", "-1", "--residue-prime-bound", "50"]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "resource_error");
}

#[test]
fn vp_and_kobayashi() {
    let (_, v) = run_json(&["vp", "-1", "7"]);
    assert_eq!(v["outputs"]["vp_factors"], serde_json::json!([12]));
    let (_, v) = run_json(&["vp", "5", "7"]);
    assert_eq!(v["outputs"]["remark"]["pass"], true);
    let (_, v) = run_json(&["kobayashi", "-7", "3"]);
    assert_eq!(v["outputs"]["candidates"], serde_json::json!([2, 4]));
    assert_eq!(run(&["kobayashi", "-3", "5"]).0, 3);
}

#[test]
fn chevalley_against_closed_form() {
    let (_, v) = run_json(&[
        "chevalley", "--h-k", "1", "--r", "2", "--e", "6,6", "--norm-index", "12", "--degree", "6", "--lem3", "2,0,2,7",
    ]);
    assert_eq!(v["outputs"]["value"], "2");
    assert_eq!(v["outputs"]["matches_lem3"], true);
    assert_eq!(v["outputs"]["lem3"]["even"], true);
}

#[test]
fn psi_reports_the_chain_counterexample() {
    let (code, v) = run_json(&["psi", "3", "5", "--scalar", "2:2"]);
    assert_eq!(code, 0);
    let subs = v["outputs"]["subgroups"].as_array().unwrap();
    assert!(subs.iter().any(|s| s["chain"] == false));
    assert!(subs.iter().all(|s| s["criteria_b"] == true && s["telescoping"] == true));
    let (_, v) = run_json(&["psi", "3", "3", "--scalar", "2:-1"]);
    let subs = v["outputs"]["subgroups"].as_array().unwrap();
    assert!(subs.iter().all(|s| s["chain"] == true));
    assert_eq!(run(&["psi", "3", "8", "--all-actions"]).0, 3);
}

#[test]
fn verify_all_is_deterministic() {
    let (code, a) = run(&["verify-all", "--size-bound", "4"]);
    assert_eq!(code, 0);
    assert_eq!(a, run(&["verify-all", "--size-bound", "4"]).1);
    let v: Value = serde_json::from_str(&a).unwrap();
    for s in v["outputs"]["suites"].as_array().unwrap() {
        assert_eq!(s["pass"], s["name"] != "psi_chain", "{s}");
    }
    let (_, v) = run_json(&["verify-all", "--size-bound", "1"]);
    assert_eq!(v["outputs"]["all_pass"], true);
    assert_eq!(run(&["verify-all", "--size-bound", "99"]).0, 4);
}

#[test]
fn pretty_output() {
    let (code, out) = run(&["stickelberger", "3", "--pretty"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("stickelberger [ok]"));
    assert!(out.contains("index = 3"));
}
