use std::process::{Command, Output};

use serde_json::Value;

fn gbent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_gbent_level_two() {
    let out = gbent(&["analyze", "2:2:0,0,0,2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["classification"]["gbent"], true);
    assert_eq!(v["classification"]["dual_status"], "regular");
    assert_eq!(v["classification"]["dual"], serde_json::json!([0, 0, 0, 2]));
    assert_eq!(v["gray"]["class"], "semibent");
    assert_eq!(v["theorems"]["k2"]["holds"], true);
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 4);
    assert!(v["spectrum"][0].get("approx").is_none());
}

#[test]
fn analyze_not_gbent_with_approx() {
    let out = gbent(&["analyze", "--approx", "--tt", "3:3:0,1,2,3,4,5,6,7"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["classification"]["gbent"], false);
    assert_eq!(v["classification"]["dual_status"], "not_gbent");
    assert_eq!(v["gray"]["class"], "semibent");
    assert_eq!(v["spectrum"][0]["approx"].as_array().unwrap().len(), 2);
}

#[test]
fn odd_n_level_two_dual_not_representable() {
    let v = json_of(&gbent(&["analyze", "2:1:0,1"]));
    assert_eq!(v["classification"]["gbent"], true);
    assert_eq!(v["classification"]["dual_status"], "not_representable");
    assert_eq!(v["classification"]["dual"], Value::Null);
}

#[test]
fn gray_only_and_gray_agree() {
    let a = json_of(&gbent(&["analyze", "--gray-only", "4:2:0,1,2,11"]));
    let b = json_of(&gbent(&["gray", "4:2:0,1,2,11"]));
    assert_eq!(a, b);
    assert_eq!(a["gray"]["n"], 5);
}

#[test]
fn json_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"n": 2, "k": 2, "values": [0, 0, 0, 2]}"#).unwrap();
    let out = gbent(&["analyze", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["classification"]["gbent"], true);
}

#[test]
fn malformed_input_exits_two() {
    for bad in ["2:2:0,0,0", "2:2:0,0,0,4", "9:1:0,0", "nonsense"] {
        let out = gbent(&["analyze", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(gbent(&["analyze"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    let out = gbent(&["verify", "k3", "--n", "2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["tested"], 4096);
    assert_eq!(v["discrepancies"], 0);

    let out = gbent(&["verify", "identities", "--n", "3", "--k", "3", "--samples", "20"]);
    assert!(out.status.success());
}

#[test]
fn verify_rejects_wrong_level() {
    assert_eq!(gbent(&["verify", "k2", "--n", "2", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn search_exhaustive_refused_when_infeasible() {
    let out = gbent(&["search", "--n", "3", "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hits.jsonl");
    let out = gbent(&[
        "search",
        "--n",
        "4",
        "--k",
        "4",
        "--mode",
        "construct",
        "--family",
        "sparse",
        "--count",
        "20",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary = json_of(&out);
    assert_eq!(summary["matched"], 20);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 20);
    for line in text.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["classification"]["gbent"], true);
    }
}

#[test]
fn search_bad_predicate() {
    let out = gbent(&["search", "--n", "1", "--k", "2", "--predicate", "pretty"]);
    assert_eq!(out.status.code(), Some(2));
}
