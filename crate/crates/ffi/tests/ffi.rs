use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use chern_ffi::*;

fn manifest(name: &str) -> CString {
    let path = format!("{}/../core/manifests/{}", env!("CARGO_MANIFEST_DIR"), name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> *mut ChernModel {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { chern_model_from_json(manifest(name).as_ptr(), &mut m) }, ChernStatus::Ok);
    assert!(!m.is_null());
    m
}

unsafe fn take(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    chern_string_free(s);
    v
}

fn last_error() -> String {
    let p = chern_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn cocycle_through_the_c_interface() {
    let m = load("cp1_o1.json");
    unsafe {
        assert_eq!(chern_model_charts(m), 2);
        assert_eq!(chern_model_max_degree(m), 1);
        let family = CString::new("hol").unwrap();
        let mut out = ptr::null_mut();
        let s = chern_cocycle_json(m, family.as_ptr(), ChernVariant::Arrow, -1, &mut out);
        assert_eq!(s, ChernStatus::Ok);
        assert!(chern_last_error().is_null());
        let v = take(out);
        assert_eq!(v["closed"], true);
        assert_eq!(v["atiyah"]["matches"], true);
        chern_model_free(m);
    }
}

#[test]
fn compare_and_verify() {
    let m = load("transgression.json");
    unsafe {
        let (a, b) = (CString::new("cw").unwrap(), CString::new("bt").unwrap());
        let mut out = ptr::null_mut();
        assert_eq!(chern_compare_json(m, a.as_ptr(), b.as_ptr(), &mut out), ChernStatus::Ok);
        assert_eq!(take(out)["verified"], true);
        chern_model_free(m);

        assert_eq!(chern_verify_json(2, 1, 2, 1, &mut out), ChernStatus::Ok);
        let v = take(out);
        assert_eq!(v["passed"], true);
        assert_eq!(v["seed"], 2);
        assert_eq!(chern_verify_json(2, 7, 2, 1, &mut out), ChernStatus::InvalidArgument);
        assert!(out.is_null());
        assert!(last_error().contains("rank"));
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(chern_model_from_json(ptr::null(), &mut m), ChernStatus::InvalidArgument);
        let bad = CString::new("{\"mode\": 1}").unwrap();
        assert_eq!(chern_model_from_json(bad.as_ptr(), &mut m), ChernStatus::Input);
        assert!(m.is_null());
        assert!(last_error().contains("manifest"));

        let mut v: serde_json::Value = serde_json::from_str(manifest("bott_tu.json").to_str().unwrap()).unwrap();
        v["transitions"]["0,2"] = serde_json::json!([["1", "0"], ["0", "1"]]);
        let broken = CString::new(v.to_string()).unwrap();
        assert_eq!(chern_model_from_json(broken.as_ptr(), &mut m), ChernStatus::CocycleCondition);

        let m = load("chern_weil.json");
        let family = CString::new("missing").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(chern_cocycle_json(m, family.as_ptr(), ChernVariant::Standard, 1, &mut out), ChernStatus::Input);
        assert!(out.is_null());
        assert_eq!(chern_cocycle_json(ptr::null(), family.as_ptr(), ChernVariant::Standard, 1, &mut out), ChernStatus::InvalidArgument);
        chern_model_free(m);
        chern_model_free(ptr::null_mut());
        chern_string_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(chern_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_interface_and_compiles_as_c() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let header = std::fs::read_to_string(format!("{}/chern.h", dir)).unwrap();
    for name in [
        "chern_model_from_json",
        "chern_model_free",
        "chern_cocycle_json",
        "chern_compare_json",
        "chern_verify_json",
        "chern_string_free",
        "chern_last_error",
        "CHERN_STATUS_COCYCLE_CONDITION = 3",
        "typedef struct ChernModel ChernModel;",
    ] {
        assert!(header.contains(name), "{} missing from chern.h", name);
    }
    let src = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("header_check.c");
    std::fs::write(&src, "#include \"chern.h\"\nint main(void) { ChernModel *m = 0; return (int)chern_model_charts(m); }\n")
        .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", dir])
        .arg(&src)
        .status()
        .expect("a C compiler");
    assert!(status.success());
}
