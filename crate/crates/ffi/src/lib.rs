//! C ABI over the `mzv` library.
//!
//! Strings returned through `char **out` are owned by the caller and must be
//! released with [`mzv_string_free`]. On any status other than `MZV_STATUS_OK`
//! a message is available from [`mzv_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mzv::identities::{mine_relations, relations_csv, verify, IdentityId, RelationClass, Tag};
use mzv::numerics::{ArgTuple, Evaluator, PrecisionContext};
use mzv::word_algebra::{parse_rational, shuffle, stuffle, Composition, LinComb, Word};
use mzv::MzvError;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    PreconditionViolated = 4,
    DomainError = 5,
    /// The call completed but at least one check failed.
    VerificationFailed = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque evaluator with a fixed precision and a value cache.
pub struct MzvEvaluator {
    inner: Evaluator,
    digits: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &MzvError) -> MzvStatus {
    match e {
        MzvError::Parse(_) | MzvError::WordNotInH1(_) => MzvStatus::ParseError,
        MzvError::PreconditionViolated(_)
        | MzvError::WeightTooSmall { .. }
        | MzvError::DepthMismatch { .. }
        | MzvError::UnsupportedShape(_) => MzvStatus::PreconditionViolated,
        MzvError::DomainError(_) | MzvError::DivergentIndex(_) => MzvStatus::DomainError,
        MzvError::NotDivisible(_) | MzvError::InternalDivisionError(_) => MzvStatus::Internal,
    }
}

enum Failure {
    Status(MzvStatus, String),
    Lib(MzvError),
}

impl From<MzvError> for Failure {
    fn from(e: MzvError) -> Failure {
        Failure::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<MzvStatus, Failure>) -> MzvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside mzv");
            MzvStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(MzvStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(MzvStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(MzvStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure::Status(MzvStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Creates an evaluator for `digits` correct decimal digits. Returns null if
/// `digits` is 0.
#[no_mangle]
pub extern "C" fn mzv_evaluator_new(digits: u32) -> *mut MzvEvaluator {
    if digits == 0 {
        set_error("digits must be positive");
        return ptr::null_mut();
    }
    let ev = MzvEvaluator { inner: Evaluator::new(PrecisionContext::new(digits)), digits };
    Box::into_raw(Box::new(ev))
}

/// # Safety
/// `ev` must come from [`mzv_evaluator_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mzv_evaluator_free(ev: *mut MzvEvaluator) {
    if !ev.is_null() {
        drop(Box::from_raw(ev));
    }
}

/// `ζ(index)` as a decimal string, e.g. index `"2,1"`.
///
/// # Safety
/// `ev` must be a live evaluator, `index` a NUL-terminated string and `out`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mzv_zeta(ev: *const MzvEvaluator, index: *const c_char, out: *mut *mut c_char) -> MzvStatus {
    guard(|| {
        let ev = ev.as_ref().ok_or(Failure::Status(MzvStatus::NullPointer, "evaluator is null".into()))?;
        let c: Composition = read_str(index, "index")?.parse()?;
        let v = ev.inner.zeta(&c)?;
        write_out(out, v.to_decimal(ev.digits))?;
        Ok(MzvStatus::Ok)
    })
}

/// `Li_index(z^e1, ..., z^en)` as a decimal string; `z` is a rational such
/// as `"1/2"` and `exponents` has `n_exponents` entries.
///
/// # Safety
/// Pointers as for [`mzv_zeta`]; `exponents` must point to `n_exponents`
/// values.
#[no_mangle]
pub unsafe extern "C" fn mzv_li(
    ev: *const MzvEvaluator,
    index: *const c_char,
    exponents: *const u32,
    n_exponents: usize,
    z: *const c_char,
    out: *mut *mut c_char,
) -> MzvStatus {
    guard(|| {
        let ev = ev.as_ref().ok_or(Failure::Status(MzvStatus::NullPointer, "evaluator is null".into()))?;
        let c: Composition = read_str(index, "index")?.parse()?;
        if exponents.is_null() && n_exponents > 0 {
            return Err(Failure::Status(MzvStatus::NullPointer, "exponents is null".into()));
        }
        let exps = if n_exponents == 0 { Vec::new() } else { std::slice::from_raw_parts(exponents, n_exponents).to_vec() };
        let base = parse_rational(read_str(z, "z")?)?;
        let v = ev.inner.li(&c, &ArgTuple::new(exps, base))?;
        write_out(out, v.to_decimal(ev.digits))?;
        Ok(MzvStatus::Ok)
    })
}

/// Verifies identity `id` (e.g. `"thm1_i"`) at `weight`, writing a JSON
/// array of reports. Returns `MZV_STATUS_VERIFICATION_FAILED` when a check
/// fails; the JSON is written in that case too.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_verify_json(
    id: *const c_char,
    weight: u32,
    digits: u32,
    out_json: *mut *mut c_char,
) -> MzvStatus {
    guard(|| {
        let tag: Tag = read_str(id, "id")?.parse()?;
        let reports = verify(IdentityId::new(tag, weight)?, PrecisionContext::new(digits.max(1)))?;
        let json = serde_json::to_string(&reports).map_err(|e| Failure::Status(MzvStatus::Internal, e.to_string()))?;
        write_out(out_json, json)?;
        if reports.iter().all(|r| r.pass) {
            Ok(MzvStatus::Ok)
        } else {
            set_error("verification failed");
            Ok(MzvStatus::VerificationFailed)
        }
    })
}

/// Shuffle product of two word combinations such as `"xy"` or `"xy + 2*yy"`.
///
/// # Safety
/// Inputs must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_shuffle(a: *const c_char, b: *const c_char, out: *mut *mut c_char) -> MzvStatus {
    guard(|| {
        let a: LinComb<Word> = read_str(a, "a")?.parse()?;
        let b: LinComb<Word> = read_str(b, "b")?.parse()?;
        write_out(out, shuffle(&a, &b).to_string())?;
        Ok(MzvStatus::Ok)
    })
}

/// Stuffle product of two index combinations such as `"2,1"`.
///
/// # Safety
/// Inputs must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_stuffle(a: *const c_char, b: *const c_char, out: *mut *mut c_char) -> MzvStatus {
    guard(|| {
        let a: LinComb<Composition> = read_str(a, "a")?.parse()?;
        let b: LinComb<Composition> = read_str(b, "b")?.parse()?;
        write_out(out, stuffle(&a, &b).to_string())?;
        Ok(MzvStatus::Ok)
    })
}

/// Relation matrix of class `"r21"` or `"r111"` at `weight`, as CSV.
///
/// # Safety
/// `class` must be a NUL-terminated string and `out_csv` writable.
#[no_mangle]
pub unsafe extern "C" fn mzv_relations_csv(weight: u32, class: *const c_char, out_csv: *mut *mut c_char) -> MzvStatus {
    guard(|| {
        let class: RelationClass = read_str(class, "class")?.parse()?;
        write_out(out_csv, relations_csv(&mine_relations(weight, class)?)?)?;
        Ok(MzvStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mzv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mzv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
