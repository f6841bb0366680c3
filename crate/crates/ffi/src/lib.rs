//! C ABI over `dtc_core`.
//!
//! Planners and complexes are opaque handles. Every fallible call returns a
//! `DtcStatus`; on failure `dtc_last_error` describes what went wrong on the
//! calling thread. Strings handed out by the library are released with
//! `dtc_string_free`, handles with their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dtc_core::algebra::{F2, Q};
use dtc_core::cli::lookup_planner;
use dtc_core::geometry::point_from_json;
use dtc_core::homology::{betti, bounds_report, fixtures, SimplicialComplex};
use dtc_core::planners::Planner;
use dtc_core::rational::format_fraction;
use dtc_core::verify::audit_planner;

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    /// the computation ran and reported a failure
    Failed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Coefficient field for homology queries.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtcField {
    Rational = 0,
    Mod2 = 1,
}

/// Opaque planner handle.
pub struct DtcPlanner {
    inner: Planner,
}

/// Opaque simplicial complex handle.
pub struct DtcComplex {
    inner: SimplicialComplex,
}

/// Summary of a planner audit.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DtcAuditSummary {
    pub samples: usize,
    pub violations: usize,
    pub max_support: usize,
    pub declared_pieces: usize,
    pub max_endpoint_error: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("nul bytes removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(DtcStatus, String);

impl Fail {
    fn invalid(msg: impl std::fmt::Display) -> Self {
        Fail(DtcStatus::InvalidArgument, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DtcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DtcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            DtcStatus::Panic
        }
    }
}

/// Like `guard` for constructors: null on failure.
fn guard_ptr<T>(f: impl FnOnce() -> Result<T, Fail>) -> *mut T {
    let mut out = None;
    guard(|| {
        out = Some(f()?);
        Ok(())
    });
    out.map_or(ptr::null_mut(), |v| Box::into_raw(Box::new(v)))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(DtcStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(DtcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(DtcStatus::NullArgument, format!("{what} is null")))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DtcStatus::NullArgument, "output pointer is null".into()));
    }
    *out = CString::new(s).map_err(|_| Fail::invalid("output contains a nul byte"))?.into_raw();
    Ok(())
}

fn parse(what: &str, s: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(s).map_err(|e| Fail::invalid(format!("{what} is not valid JSON: {e}")))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread; do not free it.
#[no_mangle]
pub extern "C" fn dtc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dtc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dtc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a registered planner (`"circle"`, `"rpn(2)"`, ...) or one of the
/// negative-control fixtures. Null when the name is unknown.
///
/// # Safety
/// `name` must be null or a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn dtc_planner_new(name: *const c_char) -> *mut DtcPlanner {
    guard_ptr(|| {
        let name = text(name, "name")?;
        let inner = lookup_planner(name).ok_or_else(|| Fail::invalid(format!("unknown planner `{name}`")))?;
        Ok(DtcPlanner { inner })
    })
}

/// # Safety
/// `p` must be null or a handle from `dtc_planner_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dtc_planner_free(p: *mut DtcPlanner) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Declared number of pieces, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live planner handle.
#[no_mangle]
pub unsafe extern "C" fn dtc_planner_pieces(p: *const DtcPlanner) -> usize {
    p.as_ref().map_or(0, |p| p.inner.pieces())
}

/// Plans from `from_json` to `to_json` (points in the planner's JSON
/// encoding) and writes the distributed path as JSON to `*out`:
/// `{"support": n, "pieces": [{"weight": "p/q", "path": ...}]}`.
///
/// # Safety
/// Pointers must be valid; `*out` receives a string for `dtc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dtc_planner_plan(
    p: *const DtcPlanner,
    from_json: *const c_char,
    to_json: *const c_char,
    out: *mut *mut c_char,
) -> DtcStatus {
    guard(|| {
        let planner = &handle(p, "planner")?.inner;
        let space = planner.space();
        let x = point_from_json(space, &parse("from", text(from_json, "from")?)?).map_err(Fail::invalid)?;
        let y = point_from_json(space, &parse("to", text(to_json, "to")?)?).map_err(Fail::invalid)?;
        let d = planner.plan(&x, &y).map_err(|e| Fail(DtcStatus::Failed, e.to_string()))?;
        let pieces: Vec<serde_json::Value> = d
            .measure()
            .atoms()
            .iter()
            .map(|a| serde_json::json!({ "weight": format_fraction(&a.weight), "path": a.elem }))
            .collect();
        let body = serde_json::json!({ "support": d.support_size(), "pieces": pieces });
        emit(out, body.to_string())
    })
}

/// Audits `samples` random endpoint pairs. Writes the summary to `*summary`
/// and returns `DTC_STATUS_FAILED` when any violation was found.
///
/// # Safety
/// `p` must be a live planner handle and `summary` writable.
#[no_mangle]
pub unsafe extern "C" fn dtc_planner_audit(
    p: *const DtcPlanner,
    samples: usize,
    seed: u64,
    summary: *mut DtcAuditSummary,
) -> DtcStatus {
    guard(|| {
        let planner = &handle(p, "planner")?.inner;
        if summary.is_null() {
            return Err(Fail(DtcStatus::NullArgument, "summary is null".into()));
        }
        let r = audit_planner(planner, samples, seed);
        *summary = DtcAuditSummary {
            samples: r.samples,
            violations: r.violation_count,
            max_support: r.max_support,
            declared_pieces: r.declared_pieces,
            max_endpoint_error: r.max_endpoint_error,
        };
        if r.is_clean() {
            Ok(())
        } else {
            let first = r.violations.first().map(|v| format!("{v:?}")).unwrap_or_default();
            Err(Fail(DtcStatus::Failed, format!("{} violations; first: {first}", r.violation_count)))
        }
    })
}

/// Parses `{"vertices": N, "maximal": [[...], ...]}`. Null on error.
///
/// # Safety
/// `json` must be null or a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn dtc_complex_from_json(json: *const c_char) -> *mut DtcComplex {
    guard_ptr(|| {
        let inner = SimplicialComplex::from_json_str(text(json, "json")?).map_err(Fail::invalid)?;
        Ok(DtcComplex { inner })
    })
}

/// Built-in triangulation by name (`"S2"`, `"T2"`, `"RP2"`, ...). Null when
/// the name is unknown.
///
/// # Safety
/// `name` must be null or a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn dtc_complex_fixture(name: *const c_char) -> *mut DtcComplex {
    guard_ptr(|| {
        let name = text(name, "name")?;
        let inner = fixtures::by_name(name).ok_or_else(|| Fail::invalid(format!("unknown fixture `{name}`")))?;
        Ok(DtcComplex { inner })
    })
}

/// # Safety
/// `c` must be null or a complex handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dtc_complex_free(c: *mut DtcComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Betti numbers over `field`. Writes up to `cap` values to `out` and the
/// full count to `*len`; returns `DTC_STATUS_BUFFER_TOO_SMALL` when `cap`
/// is short. `out` may be null when `cap` is 0.
///
/// # Safety
/// `out` must hold `cap` values and `len` be writable.
#[no_mangle]
pub unsafe extern "C" fn dtc_complex_betti(
    c: *const DtcComplex,
    field: DtcField,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> DtcStatus {
    guard(|| {
        let k = &handle(c, "complex")?.inner;
        if len.is_null() || (out.is_null() && cap > 0) {
            return Err(Fail(DtcStatus::NullArgument, "output pointer is null".into()));
        }
        let b = match field {
            DtcField::Rational => betti::<Q>(k),
            DtcField::Mod2 => betti::<F2>(k),
        };
        *len = b.len();
        if b.len() > cap {
            return Err(Fail(DtcStatus::BufferTooSmall, format!("need room for {} values", b.len())));
        }
        ptr::copy_nonoverlapping(b.as_ptr(), out, b.len());
        Ok(())
    })
}

/// Rational lower bounds: `*dcat` gets the cup-length and `*dtc` the
/// zero-divisor cup-length.
///
/// # Safety
/// `c` must be a live complex handle; `dcat` and `dtc` writable.
#[no_mangle]
pub unsafe extern "C" fn dtc_complex_lower_bounds(c: *const DtcComplex, dcat: *mut usize, dtc: *mut usize) -> DtcStatus {
    guard(|| {
        let k = &handle(c, "complex")?.inner;
        if dcat.is_null() || dtc.is_null() {
            return Err(Fail(DtcStatus::NullArgument, "output pointer is null".into()));
        }
        let r = bounds_report(k).map_err(|e| Fail(DtcStatus::Failed, e.to_string()))?;
        *dcat = r.dcat_lower;
        *dtc = r.dtc_lower;
        Ok(())
    })
}

/// Full bounds report as JSON, the same document `dtc bounds` prints.
///
/// # Safety
/// `c` must be a live complex handle; `*out` receives a string for
/// `dtc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dtc_complex_bounds_json(c: *const DtcComplex, out: *mut *mut c_char) -> DtcStatus {
    guard(|| {
        let k = &handle(c, "complex")?.inner;
        let r = bounds_report(k).map_err(|e| Fail(DtcStatus::Failed, e.to_string()))?;
        emit(out, serde_json::to_string(&r).expect("reports serialize"))
    })
}

/// Runs the command line with `argc` arguments (program name first) and
/// returns its exit code, or -1 when the arguments themselves are unusable.
/// Captured output goes to `*out` and `*err`; either may be null to discard.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn dtc_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> i32 {
    let mut code = -1;
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Fail(DtcStatus::NullArgument, "argv is null".into()));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let r = dtc_core::cli::run(args);
        if !out.is_null() {
            emit(out, r.stdout)?;
        }
        if !err.is_null() {
            emit(err, r.stderr)?;
        }
        code = r.code;
        Ok(())
    });
    code
}
