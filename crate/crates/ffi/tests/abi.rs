use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dtc_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = dtc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    dtc_string_free(p);
    s
}

#[test]
fn plan_on_circle() {
    unsafe {
        let p = dtc_planner_new(cs("circle").as_ptr());
        assert!(!p.is_null());
        assert_eq!(dtc_planner_pieces(p), 2);
        let mut out = ptr::null_mut();
        let st = dtc_planner_plan(p, cs("[1,0]").as_ptr(), cs("[-1,0]").as_ptr(), &mut out);
        assert_eq!(st, DtcStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["support"], 2);
        assert_eq!(v["pieces"][0]["weight"], "1/2");
        dtc_planner_free(p);
    }
}

#[test]
fn audit_summary() {
    unsafe {
        let p = dtc_planner_new(cs("rpn(2)").as_ptr());
        let mut s = DtcAuditSummary::default();
        assert_eq!(dtc_planner_audit(p, 200, 3, &mut s), DtcStatus::Ok);
        assert_eq!((s.samples, s.violations, s.declared_pieces), (200, 0, 2));
        assert!(s.max_support <= 2);
        dtc_planner_free(p);

        let bad = dtc_planner_new(cs("swapped_endpoints").as_ptr());
        assert_eq!(dtc_planner_audit(bad, 50, 3, &mut s), DtcStatus::Failed);
        assert_eq!(s.violations, 50);
        assert!(last_error().contains("violations"));
        dtc_planner_free(bad);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        assert!(dtc_planner_new(cs("nope").as_ptr()).is_null());
        assert!(last_error().contains("unknown planner"));
        assert!(dtc_planner_new(ptr::null()).is_null());
        assert!(last_error().contains("null"));

        let p = dtc_planner_new(cs("circle").as_ptr());
        let mut out = ptr::null_mut();
        let st = dtc_planner_plan(p, cs("[1,0").as_ptr(), cs("[0,1]").as_ptr(), &mut out);
        assert_eq!(st, DtcStatus::InvalidArgument);
        assert!(out.is_null());
        assert_eq!(dtc_planner_plan(p, cs("[1,0]").as_ptr(), cs("[0,1]").as_ptr(), ptr::null_mut()), DtcStatus::NullArgument);
        let bytes = [0xffu8, 0];
        assert_eq!(dtc_planner_plan(p, bytes.as_ptr().cast(), cs("[0,1]").as_ptr(), &mut out), DtcStatus::InvalidUtf8);
        dtc_planner_free(p);

        // a successful call clears the message
        let k = dtc_complex_fixture(cs("S1").as_ptr());
        assert!(dtc_last_error().is_null());
        dtc_complex_free(k);

        dtc_planner_free(ptr::null_mut());
        dtc_complex_free(ptr::null_mut());
        dtc_string_free(ptr::null_mut());
        assert_eq!(dtc_planner_pieces(ptr::null()), 0);
    }
}

#[test]
fn complex_queries() {
    unsafe {
        let k = dtc_complex_fixture(cs("T2").as_ptr());
        let mut b = [0usize; 2];
        let mut len = 0;
        assert_eq!(dtc_complex_betti(k, DtcField::Rational, b.as_mut_ptr(), 2, &mut len), DtcStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut b = [0usize; 3];
        assert_eq!(dtc_complex_betti(k, DtcField::Rational, b.as_mut_ptr(), 3, &mut len), DtcStatus::Ok);
        assert_eq!(b, [1, 2, 1]);
        let (mut dcat, mut dtc) = (0, 0);
        assert_eq!(dtc_complex_lower_bounds(k, &mut dcat, &mut dtc), DtcStatus::Ok);
        assert_eq!((dcat, dtc), (2, 2));
        dtc_complex_free(k);

        let rp2 = dtc_complex_fixture(cs("RP2").as_ptr());
        assert_eq!(dtc_complex_betti(rp2, DtcField::Mod2, b.as_mut_ptr(), 3, &mut len), DtcStatus::Ok);
        assert_eq!(b, [1, 1, 1]);
        dtc_complex_free(rp2);

        let s2 = dtc_complex_from_json(cs(r#"{"vertices":4,"maximal":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#).as_ptr());
        assert!(!s2.is_null());
        let mut out = ptr::null_mut();
        assert_eq!(dtc_complex_bounds_json(s2, &mut out), DtcStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["dTC_lower"], 2);
        dtc_complex_free(s2);

        assert!(dtc_complex_from_json(cs(r#"{"vertices":2,"maximal":[[0,0]]}"#).as_ptr()).is_null());
        assert!(last_error().contains("repeated vertex"));
    }
}

#[test]
fn run_matches_cli() {
    let args: Vec<CString> = ["dtc", "bounds", "--complex", "S2", "--field", "Q"].iter().map(|s| cs(s)).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(dtc_run(ptrs.len(), ptrs.as_ptr(), &mut out, &mut err), 0);
        let expected = dtc_core::cli::run(["dtc", "bounds", "--complex", "S2", "--field", "Q"]);
        assert_eq!(take(out), expected.stdout);
        assert_eq!(take(err), "");

        let bad: Vec<CString> = ["dtc", "frobnicate"].iter().map(|s| cs(s)).collect();
        let ptrs: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(dtc_run(ptrs.len(), ptrs.as_ptr(), ptr::null_mut(), &mut err), 1);
        assert!(take(err).contains("schema"));
        assert_eq!(dtc_run(1, ptr::null(), ptr::null_mut(), ptr::null_mut()), -1);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(dtc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
