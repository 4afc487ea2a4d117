use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use mzv_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { mzv_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mzv_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn zeta_through_handle() {
    let ev = mzv_evaluator_new(20);
    let idx = CString::new("4").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { mzv_zeta(ev, idx.as_ptr(), &mut out) };
    assert_eq!(st, MzvStatus::Ok);
    assert_eq!(take(out), "1.08232323371113819152");

    let bad = CString::new("1,2").unwrap();
    let st = unsafe { mzv_zeta(ev, bad.as_ptr(), &mut out) };
    assert_eq!(st, MzvStatus::DomainError);
    assert!(last_error().contains("divergent"));
    unsafe { mzv_evaluator_free(ev) };
}

#[test]
fn li_and_null_handling() {
    let ev = mzv_evaluator_new(15);
    let idx = CString::new("1").unwrap();
    let z = CString::new("1/2").unwrap();
    let exps = [1u32];
    let mut out = ptr::null_mut();
    let st = unsafe { mzv_li(ev, idx.as_ptr(), exps.as_ptr(), 1, z.as_ptr(), &mut out) };
    assert_eq!(st, MzvStatus::Ok);
    assert_eq!(take(out), "0.693147180559945");

    let st = unsafe { mzv_li(ev, ptr::null(), exps.as_ptr(), 1, z.as_ptr(), &mut out) };
    assert_eq!(st, MzvStatus::NullPointer);
    let st = unsafe { mzv_li(ev, idx.as_ptr(), exps.as_ptr(), 1, z.as_ptr(), ptr::null_mut()) };
    assert_eq!(st, MzvStatus::NullPointer);
    assert!(mzv_evaluator_new(0).is_null());
    unsafe { mzv_evaluator_free(ev) };
}

#[test]
fn algebra_products() {
    let a = CString::new("xy").unwrap();
    let b = CString::new("y").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mzv_shuffle(a.as_ptr(), b.as_ptr(), &mut out) }, MzvStatus::Ok);
    assert_eq!(take(out), "2·xyy + 1·yxy");

    let a = CString::new("2").unwrap();
    let b = CString::new("1").unwrap();
    assert_eq!(unsafe { mzv_stuffle(a.as_ptr(), b.as_ptr(), &mut out) }, MzvStatus::Ok);
    assert_eq!(take(out), "1·1,2 + 1·2,1 + 1·3");

    let junk = CString::new("x q").unwrap();
    assert_eq!(unsafe { mzv_shuffle(junk.as_ptr(), b.as_ptr(), &mut out) }, MzvStatus::ParseError);
}

#[test]
fn verify_and_relations() {
    let id = CString::new("euler_sum").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mzv_verify_json(id.as_ptr(), 5, 30, &mut out) }, MzvStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v[0]["id"], "euler_sum");
    assert_eq!(v[0]["pass"], true);

    let id = CString::new("thm3_i").unwrap();
    assert_eq!(unsafe { mzv_verify_json(id.as_ptr(), 5, 30, &mut out) }, MzvStatus::PreconditionViolated);
    assert!(last_error().contains("weight parity violated"));

    let class = CString::new("r21").unwrap();
    assert_eq!(unsafe { mzv_relations_csv(5, class.as_ptr(), &mut out) }, MzvStatus::Ok);
    assert_eq!(take(out).lines().count(), 1 + 6);
    assert_eq!(unsafe { mzv_relations_csv(3, class.as_ptr(), &mut out) }, MzvStatus::PreconditionViolated);
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/mzv.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["mzv_evaluator_new", "mzv_zeta", "mzv_last_error", "MZV_STATUS_OK", "typedef struct MzvEvaluator"] {
        assert!(text.contains(sym), "{sym}");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99"]).arg(&header).status() else {
        eprintln!("no C compiler found; skipping syntax check");
        return;
    };
    assert!(status.success());
}
