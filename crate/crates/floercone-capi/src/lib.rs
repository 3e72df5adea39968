//! C ABI for the surgery calculator.
//!
//! Knots are opaque handles created from torus parameters, an Alexander
//! polynomial, or a CFK JSON document. Results come back as UTF-8 JSON
//! strings allocated by this library (free with [`fc_string_free`]) or as
//! plain integers. Every function returns an [`FcStatus`]; on failure,
//! [`fc_last_error`] describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use floercone::cli::{hat_table_json, plus_table_json};
use floercone::cone::{d_invariant_large, hat_dims, hf_plus, Knot};
use floercone::knotio::{parse_alexander, torus_knot_alexander, BifilteredComplex};
use floercone::obstruct::full_report;
use floercone::staircase::StaircaseKnot;

/// Status codes mirroring the CLI exit-code contract.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FcStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The input could not be parsed or violates a precondition.
    InvalidInput = 2,
    /// Two computation engines disagreed; the result is not trustworthy.
    VerificationFailed = 3,
}

/// An opaque knot handle.
pub struct FcKnot {
    inner: Knot,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// A description of the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn fc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn fc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, FcStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(FcStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| {
        set_error(format!("argument is not UTF-8: {e}"));
        FcStatus::InvalidInput
    })
}

fn hand_out(out: *mut *mut FcKnot, knot: Knot) -> FcStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return FcStatus::NullPointer;
    }
    clear_error();
    unsafe { *out = Box::into_raw(Box::new(FcKnot { inner: knot })) };
    FcStatus::Ok
}

fn hand_out_string(out: *mut *mut c_char, text: String) -> FcStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return FcStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(c) => {
            clear_error();
            unsafe { *out = c.into_raw() };
            FcStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL".into());
            FcStatus::InvalidInput
        }
    }
}

unsafe fn knot_ref<'a>(knot: *const FcKnot) -> Result<&'a Knot, FcStatus> {
    if knot.is_null() {
        set_error("null knot handle".into());
        return Err(FcStatus::NullPointer);
    }
    Ok(&(*knot).inner)
}

/// Creates the staircase model of the torus knot T(a, b).
///
/// # Safety
/// `out` must be a valid pointer to an `FcKnot*`.
#[no_mangle]
pub unsafe extern "C" fn fc_knot_torus(a: u64, b: u64, out: *mut *mut FcKnot) -> FcStatus {
    let delta = match torus_knot_alexander(a, b) {
        Ok(d) => d,
        Err(e) => {
            set_error(e.to_string());
            return FcStatus::InvalidInput;
        }
    };
    match StaircaseKnot::from_alexander(&delta) {
        Ok(k) => hand_out(out, Knot::Staircase(k)),
        Err(e) => {
            set_error(e.to_string());
            FcStatus::InvalidInput
        }
    }
}

/// Creates a staircase knot from an Alexander polynomial such as
/// `"t^2 - t + 1 - t^-1 + t^-2"`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` as in
/// [`fc_knot_torus`].
#[no_mangle]
pub unsafe extern "C" fn fc_knot_from_alexander(
    text: *const c_char,
    out: *mut *mut FcKnot,
) -> FcStatus {
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let delta = match parse_alexander(text) {
        Ok(d) => d,
        Err(e) => {
            set_error(e.to_string());
            return FcStatus::InvalidInput;
        }
    };
    match StaircaseKnot::from_alexander(&delta) {
        Ok(k) => hand_out(out, Knot::Staircase(k)),
        Err(e) => {
            set_error(e.to_string());
            FcStatus::InvalidInput
        }
    }
}

/// Creates a knot from an explicit bifiltered complex in the CFK JSON
/// schema. Only the hat flavor is available for such knots.
///
/// # Safety
/// As in [`fc_knot_from_alexander`].
#[no_mangle]
pub unsafe extern "C" fn fc_knot_from_cfk_json(
    json: *const c_char,
    out: *mut *mut FcKnot,
) -> FcStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match BifilteredComplex::parse_json(text) {
        Ok(cx) => hand_out(out, Knot::Complex(cx)),
        Err(e) => {
            set_error(e.to_string());
            FcStatus::InvalidInput
        }
    }
}

/// Releases a knot handle. Null is ignored.
///
/// # Safety
/// `knot` must be a handle from one of the constructors, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_knot_free(knot: *mut FcKnot) {
    if !knot.is_null() {
        drop(Box::from_raw(knot));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The Seifert genus of the knot model.
///
/// # Safety
/// `knot` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fc_knot_genus(knot: *const FcKnot, out: *mut i64) -> FcStatus {
    let k = match knot_ref(knot) {
        Ok(k) => k,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null output pointer".into());
        return FcStatus::NullPointer;
    }
    clear_error();
    *out = k.genus();
    FcStatus::Ok
}

fn status_of_cone_error(e: &floercone::cone::ConeError) -> FcStatus {
    match e {
        floercone::cone::ConeError::EngineMismatch { .. } => FcStatus::VerificationFailed,
        _ => FcStatus::InvalidInput,
    }
}

/// Hat-flavor dimensions per Spin^c class as JSON
/// `{"0": d0, "1": d1, ...}`.
///
/// # Safety
/// `knot` must be a live handle; `out` a valid pointer to a `char*`.
#[no_mangle]
pub unsafe extern "C" fn fc_hat_dims_json(
    knot: *const FcKnot,
    p: i64,
    out: *mut *mut c_char,
) -> FcStatus {
    let k = match knot_ref(knot) {
        Ok(k) => k,
        Err(s) => return s,
    };
    match hat_dims(k, p) {
        Ok(table) => hand_out_string(out, hat_table_json(&table).to_string()),
        Err(e) => {
            let s = status_of_cone_error(&e);
            set_error(e.to_string());
            s
        }
    }
}

/// Plus-flavor homology per class as JSON
/// `{"0": {"tower_bottom": 0, "torsion": [{"length": k, "top": q}]}, ...}`,
/// tower-normalised; both engines are run and compared.
///
/// # Safety
/// As in [`fc_hat_dims_json`].
#[no_mangle]
pub unsafe extern "C" fn fc_plus_table_json(
    knot: *const FcKnot,
    p: i64,
    out: *mut *mut c_char,
) -> FcStatus {
    let k = match knot_ref(knot) {
        Ok(k) => k,
        Err(s) => return s,
    };
    let stair = match k {
        Knot::Staircase(s) => s,
        Knot::Complex(_) => {
            set_error("plus flavor requires a staircase knot".into());
            return FcStatus::InvalidInput;
        }
    };
    match hf_plus(stair, p) {
        Ok(table) => hand_out_string(out, plus_table_json(&table).to_string()),
        Err(e) => {
            let s = status_of_cone_error(&e);
            set_error(e.to_string());
            s
        }
    }
}

/// The full reducibility obstruction report as JSON.
///
/// # Safety
/// As in [`fc_hat_dims_json`].
#[no_mangle]
pub unsafe extern "C" fn fc_obstruction_report_json(
    knot: *const FcKnot,
    p: i64,
    out: *mut *mut c_char,
) -> FcStatus {
    let k = match knot_ref(knot) {
        Ok(k) => k,
        Err(s) => return s,
    };
    match full_report(k, p) {
        Ok(report) => hand_out_string(
            out,
            serde_json::to_string(&report).expect("report serialises"),
        ),
        Err(e) => {
            set_error(e.to_string());
            FcStatus::InvalidInput
        }
    }
}

/// The d-invariant of `n`-surgery in class `[s]`, for `n >= 2g-1`, as an
/// exact fraction `*num / *den`.
///
/// # Safety
/// `knot` must be a live handle; `num` and `den` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fc_d_invariant(
    knot: *const FcKnot,
    n: i64,
    s: i64,
    num: *mut i64,
    den: *mut i64,
) -> FcStatus {
    let k = match knot_ref(knot) {
        Ok(k) => k,
        Err(st) => return st,
    };
    if num.is_null() || den.is_null() {
        set_error("null output pointer".into());
        return FcStatus::NullPointer;
    }
    let stair = match k {
        Knot::Staircase(st) => st,
        Knot::Complex(_) => {
            set_error("d-invariants require a staircase knot".into());
            return FcStatus::InvalidInput;
        }
    };
    match d_invariant_large(stair, n, s) {
        Ok(d) => {
            clear_error();
            *num = *d.numer();
            *den = *d.denom();
            FcStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            FcStatus::InvalidInput
        }
    }
}
