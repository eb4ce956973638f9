//! C ABI over `imw-core`.
//!
//! Monoids cross the boundary as opaque `ImwMonoid` handles. Every fallible
//! function returns an [`ImwStatus`]; on failure a message is available from
//! [`imw_last_error_message`] on the same thread. Strings returned through
//! `char **` are owned by the caller and released with [`imw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use imw_core::iso::brute_force_iso;
use imw_core::mtab::{parse_mtab, write_mtab, MtabError};
use imw_core::report::{analyze, emit_report, Format};
use imw_core::{Error, FiniteMonoid};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Validation = 4,
    LimitExceeded = 5,
    Internal = 6,
}

/// Verdict values: 1 holds, 0 fails, -1 not applicable (monoid not inverse).
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ImwVerdicts {
    pub inverse: i8,
    pub e_unitary: i8,
    pub f_inverse: i8,
    pub clifford: i8,
    pub weakly_schreier: i8,
}

/// Opaque handle to a validated finite monoid.
pub struct ImwMonoid {
    inner: FiniteMonoid,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> ImwStatus {
    match e {
        Error::SizeLimitExceeded { .. } | Error::BoundExceeded { .. } | Error::BudgetExceeded { .. } => {
            ImwStatus::LimitExceeded
        }
        Error::TheoremViolation(_) | Error::InternalCharacterizationFailure(_) | Error::IsoCheckFailed(_) => {
            ImwStatus::Internal
        }
        _ => ImwStatus::Validation,
    }
}

fn fail(status: ImwStatus, msg: impl Into<String>) -> ImwStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> ImwStatus) -> ImwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(ImwStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ImwStatus> {
    if text.is_null() {
        return Err(fail(ImwStatus::NullPointer, "text is null"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(ImwStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> ImwStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            ImwStatus::Ok
        }
        Err(_) => fail(ImwStatus::Internal, "output contains a nul byte"),
    }
}

fn boxed(m: FiniteMonoid) -> *mut ImwMonoid {
    Box::into_raw(Box::new(ImwMonoid { inner: m }))
}

/// Parses an `mtab v1` document into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_parse_mtab(text: *const c_char, out: *mut *mut ImwMonoid) -> ImwStatus {
    guard(|| {
        if out.is_null() {
            return fail(ImwStatus::NullPointer, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_mtab(text) {
            Ok(m) => {
                *out = boxed(m);
                ImwStatus::Ok
            }
            Err(e @ MtabError::Syntax { .. }) => fail(ImwStatus::Syntax, e.to_string()),
            Err(e) => fail(ImwStatus::Validation, e.to_string()),
        }
    })
}

/// Builds a monoid from a row-major `n * n` table with identity `id`.
///
/// # Safety
/// `table` must point to `n * n` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_from_table(
    n: usize,
    table: *const usize,
    id: usize,
    out: *mut *mut ImwMonoid,
) -> ImwStatus {
    guard(|| {
        if table.is_null() || out.is_null() {
            return fail(ImwStatus::NullPointer, "table or out is null");
        }
        let Some(len) = n.checked_mul(n) else {
            return fail(ImwStatus::LimitExceeded, "table size overflows");
        };
        let flat = std::slice::from_raw_parts(table, len).to_vec();
        match FiniteMonoid::from_flat(n, flat, id) {
            Ok(m) => {
                *out = boxed(m);
                ImwStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_free(m: *mut ImwMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_size(m: *const ImwMonoid) -> usize {
    m.as_ref().map_or(0, |m| m.inner.len())
}

/// Stores `x * y` in `*out`.
///
/// # Safety
/// `m` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_mul(m: *const ImwMonoid, x: usize, y: usize, out: *mut usize) -> ImwStatus {
    let (Some(m), false) = (m.as_ref(), out.is_null()) else {
        return fail(ImwStatus::NullPointer, "handle or out is null");
    };
    let n = m.inner.len();
    if x >= n || y >= n {
        return fail(ImwStatus::Validation, format!("element out of range 0..{n}"));
    }
    *out = m.inner.mul(x, y);
    ImwStatus::Ok
}

/// Runs all five predicates.
///
/// # Safety
/// `m` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_check(m: *const ImwMonoid, out: *mut ImwVerdicts) -> ImwStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(ImwStatus::NullPointer, "handle or out is null");
        };
        let report = match analyze("", &m.inner) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let flag = |key: &str| match report.verdicts.get(key) {
            Some(true) => 1,
            Some(false) => 0,
            None => -1,
        };
        *out = ImwVerdicts {
            inverse: flag("inverse"),
            e_unitary: flag("e_unitary"),
            f_inverse: flag("f_inverse"),
            clifford: flag("clifford"),
            weakly_schreier: flag("weakly_schreier"),
        };
        ImwStatus::Ok
    })
}

/// The full analysis report as sorted-key JSON (schema 1).
///
/// # Safety
/// `m` must be a live handle, `name` null or a nul-terminated string, and
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_report_json(
    m: *const ImwMonoid,
    name: *const c_char,
    out: *mut *mut c_char,
) -> ImwStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(ImwStatus::NullPointer, "handle or out is null");
        };
        let name = if name.is_null() {
            ""
        } else {
            match read_str(name) {
                Ok(s) => s,
                Err(s) => return s,
            }
        };
        match analyze(name, &m.inner) {
            Ok(r) => write_string(out, emit_report(&r, Format::Json)),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Serializes to `mtab v1`.
///
/// # Safety
/// `m` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_to_mtab(m: *const ImwMonoid, out: *mut *mut c_char) -> ImwStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(ImwStatus::NullPointer, "handle or out is null");
        };
        write_string(out, write_mtab(&m.inner))
    })
}

/// Brute-force isomorphism search. Sets `*found` to 1 or 0; when found and
/// `forward` is non-null, writes the bijection `a → b` into `forward`,
/// which must hold `imw_monoid_size(a)` values.
///
/// # Safety
/// `a` and `b` must be live handles, `found` valid, `forward` null or
/// large enough.
#[no_mangle]
pub unsafe extern "C" fn imw_monoid_is_isomorphic(
    a: *const ImwMonoid,
    b: *const ImwMonoid,
    max_n: usize,
    found: *mut i32,
    forward: *mut usize,
) -> ImwStatus {
    guard(|| {
        let (Some(a), Some(b), false) = (a.as_ref(), b.as_ref(), found.is_null()) else {
            return fail(ImwStatus::NullPointer, "handle or found is null");
        };
        match brute_force_iso(&a.inner, &b.inner, max_n) {
            Ok(Some(w)) => {
                *found = 1;
                if !forward.is_null() {
                    ptr::copy_nonoverlapping(w.forward.values().as_ptr(), forward, a.inner.len());
                }
                ImwStatus::Ok
            }
            Ok(None) => {
                *found = 0;
                ImwStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn imw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn imw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
