//! C interface to the cocycle engine.
//!
//! Models are opaque handles built from manifest JSON. Every call returns a
//! [`ChernStatus`]; on failure the message is available from
//! [`chern_last_error`] on the same thread. Strings handed out by the library
//! must be released with [`chern_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chern_core::cech::{CoverModel, Variant};
use chern_core::manifest::Manifest;
use chern_core::report::{cocycle_report, compare_report};
use chern_core::verify::{self, VerifyConfig};
use chern_core::Error;

/// Result codes. The numeric values of the error codes match the exit codes
/// of the command line tool where both exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChernStatus {
    Ok = 0,
    /// Null pointer, invalid UTF-8 or an out-of-range argument.
    InvalidArgument = 1,
    /// Malformed manifest, unknown family or any other input error.
    Input = 2,
    /// Transition functions violate the cocycle condition.
    CocycleCondition = 3,
    /// The result was computed but fails its own check, e.g. a cocycle that is
    /// not closed. The report is still returned.
    Contract = 4,
    /// Internal failure; the library caught a panic.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChernVariant {
    Standard = 0,
    Arrow = 1,
}

/// A validated cover model together with the manifest it came from.
pub struct ChernModel {
    manifest: Manifest,
    model: CoverModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ChernStatus, msg: &str) -> ChernStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> ChernStatus {
    let status = match e.exit_code() {
        3 => ChernStatus::CocycleCondition,
        4 => ChernStatus::Contract,
        _ => ChernStatus::Input,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> ChernStatus) -> ChernStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ChernStatus::Internal, "internal error"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, ChernStatus> {
    if p.is_null() {
        return Err(fail(ChernStatus::InvalidArgument, &format!("{} is null", what)));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ChernStatus::InvalidArgument, &format!("{} is not UTF-8", what)))
}

unsafe fn hand_out(s: String, out: *mut *mut c_char) {
    *out = CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut());
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library and valid until the next call.
#[no_mangle]
pub extern "C" fn chern_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map(|c| c.as_ptr()).unwrap_or(ptr::null()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn chern_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses and validates a manifest.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_model_from_json(json: *const c_char, out: *mut *mut ChernModel) -> ChernStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChernStatus::InvalidArgument, "out is null");
        }
        *out = ptr::null_mut();
        let json = match text(json, "json") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let built = Manifest::from_json(json).and_then(|m| m.build().map(|model| (m, model)));
        match built {
            Ok((manifest, model)) => {
                *out = Box::into_raw(Box::new(ChernModel { manifest, model }));
                ChernStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a model; null is ignored.
///
/// # Safety
/// `model` must come from [`chern_model_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chern_model_free(model: *mut ChernModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of charts, or 0 for a null model.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn chern_model_charts(model: *const ChernModel) -> usize {
    model.as_ref().map(|m| m.model.charts().len()).unwrap_or(0)
}

/// Largest Čech degree with a nonempty intersection, or 0 for a null model.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn chern_model_max_degree(model: *const ChernModel) -> usize {
    model.as_ref().map(|m| m.model.max_degree()).unwrap_or(0)
}

/// Cocycle report as JSON, the same document `chern cocycle` prints.
/// A negative `depth` uses the manifest options. Returns
/// [`ChernStatus::Contract`] with the report set when the cocycle is not closed.
///
/// # Safety
/// `model` must be a live handle, `family` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_cocycle_json(
    model: *const ChernModel,
    family: *const c_char,
    variant: ChernVariant,
    depth: i32,
    out: *mut *mut c_char,
) -> ChernStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else {
            return fail(ChernStatus::InvalidArgument, "model or out is null");
        };
        *out = ptr::null_mut();
        let family = match text(family, "family") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let variant = match variant {
            ChernVariant::Standard => Variant::Standard,
            ChernVariant::Arrow => Variant::Arrow,
        };
        let depth = if depth < 0 { m.manifest.depth(&m.model) } else { depth as usize };
        match cocycle_report(&m.model, family, variant, depth.min(m.model.max_degree()), m.manifest.options.seed) {
            Ok(r) => {
                let closed = r.closed;
                let at = r.first_violation.clone().unwrap_or_default();
                hand_out(r.to_json(), out);
                if closed {
                    ChernStatus::Ok
                } else {
                    fail(ChernStatus::Contract, &format!("cocycle is not closed at [{}]", at))
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Transgression report between two families as JSON, the document
/// `chern compare` prints. Returns [`ChernStatus::Contract`] with the report
/// set when the primitive does not verify.
///
/// # Safety
/// `model` must be a live handle, the names NUL-terminated strings and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_compare_json(
    model: *const ChernModel,
    family_a: *const c_char,
    family_b: *const c_char,
    out: *mut *mut c_char,
) -> ChernStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else {
            return fail(ChernStatus::InvalidArgument, "model or out is null");
        };
        *out = ptr::null_mut();
        let (a, b) = match (text(family_a, "family_a"), text(family_b, "family_b")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match compare_report(&m.model, a, b, m.manifest.depth(&m.model)) {
            Ok(r) => {
                let verified = r.verified;
                let at = r.defect.clone().unwrap_or_default();
                hand_out(r.to_json(), out);
                if verified {
                    ChernStatus::Ok
                } else {
                    fail(ChernStatus::Contract, &format!("transgression fails at [{}]", at))
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Runs the randomized identity suite and returns its report as JSON.
/// Returns [`ChernStatus::Contract`] with the report set when a check fails.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chern_verify_json(
    seed: u64,
    rank: usize,
    charts: usize,
    depth: usize,
    out: *mut *mut c_char,
) -> ChernStatus {
    guard(|| {
        if out.is_null() {
            return fail(ChernStatus::InvalidArgument, "out is null");
        }
        *out = ptr::null_mut();
        let cfg = VerifyConfig { seed, rank, charts, depth };
        if let Err(e) = cfg.check_bounds() {
            return fail(ChernStatus::InvalidArgument, &e.to_string());
        }
        match verify::run(&cfg) {
            Ok(r) => {
                let json = serde_json::to_string_pretty(&r).expect("serializable") + "\n";
                hand_out(json, out);
                if r.passed {
                    ChernStatus::Ok
                } else {
                    fail(ChernStatus::Contract, "verification failed")
                }
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chern_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
