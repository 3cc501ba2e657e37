use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn chern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chern")).args(args).output().expect("run chern")
}

fn fixture(name: &str) -> String {
    format!("{}/manifests/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn scratch(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn cocycle_reports_are_closed_and_deterministic() {
    let path = fixture("chern_weil.json");
    let a = chern(&["cocycle", &path, "--connections", "global"]);
    assert_eq!(a.status.code(), Some(0));
    let b = chern(&["cocycle", &path, "--connections", "global"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["closed"], true);
    assert_eq!(v["concentrated_in_degree_zero"], true);
    assert_eq!(v["variant"], "standard");
    assert!(v["cocycle"]["0"]["u^0"].is_array());
}

#[test]
fn arrow_report_on_the_projective_line() {
    let out = chern(&["cocycle", &fixture("cp1_o1.json"), "--variant", "arrow", "--connections", "hol"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mode"], "holomorphic");
    assert_eq!(v["atiyah"]["matches"], true);
    let terms = v["cocycle"]["0,1"]["u^1"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["monomial"], serde_json::json!(["dz"]));
    assert_eq!(terms[0]["coeff"], "tau*((-1)/(z))");
}

#[test]
fn bott_tu_staircase() {
    for family in ["flat", "local"] {
        let out = chern(&["cocycle", &fixture("bott_tu.json"), "--connections", family, "--depth", "2"]);
        assert_eq!(out.status.code(), Some(0), "{}", family);
        let v = json(&out);
        assert_eq!(v["staircase"], true);
        assert_eq!(v["depth"], 2);
        assert!(v["cocycle"]["0,1,2"].is_object());
    }
}

#[test]
fn compare_verifies_the_transgression() {
    let out = chern(&["compare", &fixture("transgression.json"), "--family-a", "cw", "--family-b", "bt"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert!(v.get("defect").is_none());
    assert!(v["beta"]["0,1"].is_object());
}

#[test]
fn verify_runs_and_rejects_bad_bounds() {
    let out = chern(&["verify", "--seed", "3", "--rank", "1", "--charts", "2", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass  curvature formula"));
    assert!(text.lines().last().unwrap().ends_with("0 failed"));
    assert_eq!(chern(&["verify", "--rank", "9"]).status.code(), Some(2));
    assert_eq!(chern(&["verify", "--depth", "0"]).status.code(), Some(2));
}

#[test]
fn manifest_errors_exit_with_two() {
    let out = chern(&["cocycle", &fixture("chern_weil.json"), "--connections", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    let missing = chern(&["cocycle", "/nonexistent/manifest.json", "--connections", "x"]);
    assert_eq!(missing.status.code(), Some(2));
    let broken = scratch("broken.json", "{\"mode\": \"smooth\"");
    assert_eq!(chern(&["cocycle", &broken, "--connections", "x"]).status.code(), Some(2));
    let text = std::fs::read_to_string(fixture("transgression.json")).unwrap();
    let bad = scratch("bad_expr.json", &text.replace("1+x^2+y^2", "1+x^^2"));
    let out = chern(&["compare", &bad, "--family-a", "cw", "--family-b", "bt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("transitions"));
}

#[test]
fn broken_cocycle_condition_exits_with_three() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("bott_tu.json")).unwrap()).unwrap();
    v["transitions"]["0,2"] = serde_json::json!([["1", "0"], ["0", "1"]]);
    let path = scratch("bad_cocycle.json", &v.to_string());
    let out = chern(&["cocycle", &path, "--connections", "flat"]);
    assert_eq!(out.status.code(), Some(3));
}
