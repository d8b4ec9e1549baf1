//! C ABI for the hrank library: opaque polynomial handles, integer status
//! codes, and JSON strings for structured results. Every returned string
//! is owned by the caller and must be released with [`hrank_string_free`];
//! error details are fetched per thread via [`hrank_last_error_message`].

use hrank::jet::{AnalyticJet, Recipe};
use hrank::matrix::{multinomial_bound, rank_of};
use hrank::parse::{parse_point, parse_poly};
use hrank::report::{verdict_exit_code, verification_to_json};
use hrank::verify::{verify_theorem, VerifyOptions};
use hrank::{Bidegree, PolarizedPolynomial, ScalarField};
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrankStatus {
    /// Success; for verification, the verdict "holds".
    HrankOk = 0,
    /// A hypothesis of the rank inequality was violated.
    HrankHypothesisViolated = 2,
    /// Unparsable input or invalid arguments.
    HrankUsageError = 3,
    /// An internal certification failed or the result is indeterminate.
    HrankInternalError = 4,
    /// A required pointer argument was null.
    HrankNullPointer = 5,
}

/// Opaque handle to an exact polarized polynomial.
pub struct HrankPoly {
    inner: PolarizedPolynomial,
    field: ScalarField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into()).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Message describing the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn hrank_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// # Safety
/// `text` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        return None;
    }
    CStr::from_ptr(text).to_str().ok()
}

fn field_from(text: Option<&str>) -> Result<ScalarField, String> {
    match text {
        None | Some("") => Ok(ScalarField::Qi),
        Some(t) => ScalarField::parse(t),
    }
}

fn export_string(text: String) -> *mut c_char {
    CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be a pointer previously returned by one of the
/// string-producing functions here and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hrank_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression into a polynomial handle.
///
/// `field` selects the scalar field (`"qi"` or `"qi-sqrtS"`; null means
/// `"qi"`). On success writes the new handle into `out` and returns
/// `HrankOk`; the handle must be released with [`hrank_poly_free`].
///
/// # Safety
/// `expr` must be a valid NUL-terminated string; `out` must be a valid
/// pointer; `field` must be null or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_parse(
    expr: *const c_char,
    n: usize,
    field: *const c_char,
    out: *mut *mut HrankPoly,
) -> HrankStatus {
    clear_error();
    if out.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    let Some(text) = read_str(expr) else {
        set_error("expr pointer was null or not UTF-8");
        return HrankStatus::HrankNullPointer;
    };
    let field = match field_from(read_str(field)) {
        Ok(f) => f,
        Err(e) => {
            set_error(e);
            return HrankStatus::HrankUsageError;
        }
    };
    if n < 1 {
        set_error("dimension must be at least 1");
        return HrankStatus::HrankUsageError;
    }
    match parse_poly(text, n, field) {
        Ok(poly) => {
            *out = Box::into_raw(Box::new(HrankPoly { inner: poly, field }));
            HrankStatus::HrankOk
        }
        Err(e) => {
            set_error(e.to_string());
            *out = ptr::null_mut();
            HrankStatus::HrankUsageError
        }
    }
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `p` must be a handle from [`hrank_poly_parse`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_free(p: *mut HrankPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Exact hermitian rank of the polynomial.
///
/// # Safety
/// `p` and `out_rank` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_rank(
    p: *const HrankPoly,
    out_rank: *mut usize,
) -> HrankStatus {
    clear_error();
    if p.is_null() || out_rank.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    *out_rank = rank_of(&(*p).inner);
    HrankStatus::HrankOk
}

/// Bidegree of the polynomial. For the zero polynomial `out_is_zero` is
/// set to 1 and the degree slots are left at 0.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_bidegree(
    p: *const HrankPoly,
    out_j: *mut u32,
    out_k: *mut u32,
    out_is_zero: *mut i32,
) -> HrankStatus {
    clear_error();
    if p.is_null() || out_j.is_null() || out_k.is_null() || out_is_zero.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    match (*p).inner.bidegree() {
        Bidegree::Zero => {
            *out_is_zero = 1;
            *out_j = 0;
            *out_k = 0;
        }
        Bidegree::Of(j, k) => {
            *out_is_zero = 0;
            *out_j = j;
            *out_k = k;
        }
    }
    HrankStatus::HrankOk
}

/// Whether the polynomial is real-valued on the diagonal (1 or 0).
///
/// # Safety
/// `p` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_is_real_valued(
    p: *const HrankPoly,
    out: *mut i32,
) -> HrankStatus {
    clear_error();
    if p.is_null() || out.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    *out = i32::from((*p).inner.is_real_valued());
    HrankStatus::HrankOk
}

/// Renders the polynomial back to expression text (parseable).
/// Returns null on allocation failure.
///
/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_to_string(p: *const HrankPoly) -> *mut c_char {
    if p.is_null() {
        return ptr::null_mut();
    }
    export_string((*p).inner.to_string())
}

/// The multinomial bound `C(r + d - 1, d)` on the rank of a d-th power,
/// saturated to `u64::MAX` on overflow.
#[no_mangle]
pub extern "C" fn hrank_multinomial_bound(r: usize, d: u32) -> u64 {
    u64::try_from(multinomial_bound(r, d)).unwrap_or(u64::MAX)
}

/// Verifies `rank(Q P^d) >= rank(P^d) = C(rank P + d - 1, d)` and writes
/// a JSON report into `out_json` (caller frees via [`hrank_string_free`]).
///
/// `q_kind` is `"poly"`, `"reciprocal"`, or `"exp"` (null means poly);
/// `point` is an optional comma-separated diagonal base point. The return
/// status mirrors the CLI exit code: `HrankOk` for "holds",
/// `HrankHypothesisViolated`, or `HrankInternalError` for indeterminate.
///
/// # Safety
/// `p_expr` and `q_expr` must be valid NUL-terminated strings; `out_json`
/// must be a valid pointer; optional string arguments may be null.
#[no_mangle]
pub unsafe extern "C" fn hrank_verify_json(
    p_expr: *const c_char,
    q_expr: *const c_char,
    q_kind: *const c_char,
    n: usize,
    d: u32,
    field: *const c_char,
    point: *const c_char,
    out_json: *mut *mut c_char,
) -> HrankStatus {
    clear_error();
    if out_json.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    *out_json = ptr::null_mut();
    let (Some(p_text), Some(q_text)) = (read_str(p_expr), read_str(q_expr)) else {
        set_error("expression pointers must be non-null UTF-8");
        return HrankStatus::HrankNullPointer;
    };
    let field = match field_from(read_str(field)) {
        Ok(f) => f,
        Err(e) => {
            set_error(e);
            return HrankStatus::HrankUsageError;
        }
    };
    if n < 1 {
        set_error("dimension must be at least 1");
        return HrankStatus::HrankUsageError;
    }
    let p = match parse_poly(p_text, n, field) {
        Ok(p) => p,
        Err(e) => {
            set_error(format!("P: {e}"));
            return HrankStatus::HrankUsageError;
        }
    };
    let q_poly = match parse_poly(q_text, n, field) {
        Ok(q) => q,
        Err(e) => {
            set_error(format!("Q: {e}"));
            return HrankStatus::HrankUsageError;
        }
    };
    let trunc = d.max(2);
    let q = match read_str(q_kind).unwrap_or("poly") {
        "poly" | "" => AnalyticJet::from_polynomial(q_poly, trunc),
        "reciprocal" => match AnalyticJet::jet_of(Recipe::Reciprocal(q_poly), trunc) {
            Ok(j) => j,
            Err(e) => {
                set_error(e.to_string());
                return HrankStatus::HrankUsageError;
            }
        },
        "exp" => match AnalyticJet::jet_of(Recipe::Exp(q_poly), trunc) {
            Ok(j) => j,
            Err(e) => {
                set_error(e.to_string());
                return HrankStatus::HrankUsageError;
            }
        },
        other => {
            set_error(format!("unknown q_kind `{other}`"));
            return HrankStatus::HrankUsageError;
        }
    };
    let base = match read_str(point) {
        Some(text) if !text.is_empty() => match parse_point(text, n) {
            Ok(pt) => Some(pt),
            Err(e) => {
                set_error(e.to_string());
                return HrankStatus::HrankUsageError;
            }
        },
        _ => None,
    };
    let report = verify_theorem(&p, &q, d, base, VerifyOptions::default());
    let json = verification_to_json(&report).to_string();
    *out_json = export_string(json);
    match verdict_exit_code(&report.verdict) {
        0 => HrankStatus::HrankOk,
        2 => HrankStatus::HrankHypothesisViolated,
        _ => HrankStatus::HrankInternalError,
    }
}

/// Runs the counterexample gallery and writes the JSON case list.
/// Returns `HrankOk` when every case passes.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hrank_gallery_json(out_json: *mut *mut c_char) -> HrankStatus {
    clear_error();
    if out_json.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    let cases = hrank::gallery::run_gallery();
    let all_pass = cases.iter().all(|c| c.pass);
    *out_json = export_string(hrank::report::gallery_to_json(&cases).to_string());
    if all_pass {
        HrankStatus::HrankOk
    } else {
        set_error("one or more gallery cases failed");
        HrankStatus::HrankInternalError
    }
}

/// Signed square decomposition counts: writes the number of positive and
/// negative squares for a real-valued polynomial.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_signature(
    p: *const HrankPoly,
    out_positive: *mut usize,
    out_negative: *mut usize,
) -> HrankStatus {
    clear_error();
    if p.is_null() || out_positive.is_null() || out_negative.is_null() {
        return HrankStatus::HrankNullPointer;
    }
    match hrank::matrix::signature_decompose(&(*p).inner) {
        Ok(sig) => {
            *out_positive = sig.positive.len();
            *out_negative = sig.negative.len();
            HrankStatus::HrankOk
        }
        Err(e) => {
            set_error(e.to_string());
            HrankStatus::HrankUsageError
        }
    }
}

/// The scalar field a handle was parsed under, as a string.
///
/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn hrank_poly_field(p: *const HrankPoly) -> *mut c_char {
    if p.is_null() {
        return ptr::null_mut();
    }
    export_string((*p).field.to_string())
}
