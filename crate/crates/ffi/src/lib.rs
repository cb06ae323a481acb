//! C ABI over the `sturmian` crate.
//!
//! A word family lives behind an opaque `StFamily` handle. Every call returns
//! an `StStatus`; on failure the message is kept per thread and can be read
//! with `st_last_error`. Strings returned through out-pointers are owned by
//! the caller and released with `st_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde::Serialize;
use sturmian::numeration::ReprJson;
use sturmian::pal_length::{build_witness, pal_length_fast, verify_witness};
use sturmian::palindromes::{palindrome_construction, OccurrenceJson};
use sturmian::transforms::{normalize, TraceJson};
use sturmian::{is_valid, ostrowski, value, DirectiveSequence, Error, Representation, WordFamily};

/// Opaque word family.
pub struct StFamily {
    inner: WordFamily,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Budget = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> StStatus {
    if e.is_resource() {
        StStatus::Budget
    } else if matches!(e, Error::Parse(_) | Error::InvalidCuts(_)) {
        StStatus::Parse
    } else {
        StStatus::Domain
    }
}

fn guard(f: impl FnOnce() -> Result<(), StStatus>) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            StStatus::Panic
        }
    }
}

fn fail(e: Error) -> StStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, StStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(StStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        StStatus::InvalidUtf8
    })
}

unsafe fn family<'a>(f: *mut StFamily) -> Result<&'a mut WordFamily, StStatus> {
    match f.as_mut() {
        Some(f) => Ok(&mut f.inner),
        None => {
            set_error("null family handle");
            Err(StStatus::NullPointer)
        }
    }
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), StStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(StStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn put_json<T: Serialize>(out: *mut *mut c_char, v: &T) -> Result<(), StStatus> {
    let s = serde_json::to_string(v).map_err(|e| {
        set_error(e.to_string());
        StStatus::Domain
    })?;
    put(out, CString::new(s).expect("JSON has no NUL").into_raw())
}

fn digits(s: &str) -> Result<Representation, StStatus> {
    s.parse().map_err(fail)
}

/// Last error message on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates a family from a directive such as `"fib"` or `"2,(1,3)"`.
/// `budget` caps the materialized prefix; 0 selects the default.
///
/// # Safety
/// `directive` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn st_family_new(directive: *const c_char, budget: u64, out: *mut *mut StFamily) -> StStatus {
    guard(|| {
        let d: DirectiveSequence = text(directive)?.parse().map_err(fail)?;
        let inner = if budget == 0 {
            WordFamily::new(d)
        } else {
            WordFamily::with_budget(d, budget)
        };
        put(out, Box::into_raw(Box::new(StFamily { inner })))
    })
}

/// # Safety
/// `f` must come from `st_family_new` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn st_family_free(f: *mut StFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Length `q_n` of the standard word `s_n`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_q(f: *mut StFamily, n: usize, out: *mut u64) -> StStatus {
    guard(|| {
        let q = family(f)?.q(n).map_err(fail)?;
        put(out, q)
    })
}

/// Copies `w(0..len]` into `buf`. With a short buffer nothing is copied,
/// `*written` receives the required size and `BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `buf` must hold `cap` bytes (it may be NULL when `cap` is 0); `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_prefix(
    f: *mut StFamily,
    len: u64,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> StStatus {
    guard(|| {
        let w = family(f)?.characteristic_prefix(len).map_err(fail)?;
        put(written, w.len())?;
        if w.len() > cap {
            set_error(format!("buffer of {cap} bytes, {} needed", w.len()));
            return Err(StStatus::BufferTooSmall);
        }
        if !w.is_empty() {
            if buf.is_null() {
                set_error("null buffer");
                return Err(StStatus::NullPointer);
            }
            ptr::copy_nonoverlapping(w.as_ptr(), buf, w.len());
        }
        Ok(())
    })
}

/// Ostrowski representation of `n` as `{"digits_msf": [...], "value": n}`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_ostrowski_json(f: *mut StFamily, n: u64, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let f = family(f)?;
        let r = ostrowski(f, n).map_err(fail)?;
        put_json(out, &ReprJson::new(f, &r).map_err(fail)?)
    })
}

/// Value of a digit string (most significant first, dot-separated if any digit exceeds 9).
///
/// # Safety
/// `f` must be a live handle, `digits_msf` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_value(f: *mut StFamily, digits_msf: *const c_char, out: *mut u64) -> StStatus {
    guard(|| {
        let f = family(f)?;
        let r = digits(text(digits_msf)?)?;
        put(out, value(f, &r).map_err(fail)?)
    })
}

/// # Safety
/// As for `st_value`.
#[no_mangle]
pub unsafe extern "C" fn st_is_valid(f: *mut StFamily, digits_msf: *const c_char, out: *mut bool) -> StStatus {
    guard(|| {
        let f = family(f)?;
        let r = digits(text(digits_msf)?)?;
        put(out, is_valid(f, &r).map_err(fail)?)
    })
}

/// Normalization trace `{"start", "steps": [{"kind", "m"}], "end"}` of a valid representation.
///
/// # Safety
/// As for `st_value`, with `out` receiving an owned string.
#[no_mangle]
pub unsafe extern "C" fn st_normalize_json(
    f: *mut StFamily,
    digits_msf: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let f = family(f)?;
        let r = digits(text(digits_msf)?)?;
        let trace = normalize(f, &r).map_err(fail)?;
        put_json(out, &TraceJson::new(f, &trace).map_err(fail)?)
    })
}

/// Maximal extension and representation pair of the palindrome `w(p1..p2]`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_palindrome_json(f: *mut StFamily, p1: usize, p2: usize, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let f = family(f)?;
        let c = palindrome_construction(f, p1, p2).map_err(fail)?;
        put_json(out, &OccurrenceJson::new(f, &c).map_err(fail)?)
    })
}

/// Palindromic length of `w(0..len]`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_pal_length(f: *mut StFamily, len: u64, out: *mut usize) -> StStatus {
    guard(|| {
        let w = family(f)?.characteristic_prefix(len).map_err(fail)?;
        put(out, pal_length_fast(w).map_err(fail)?.pal_len)
    })
}

/// Builds and verifies the witness for `q`; the report is returned as JSON.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_witness_json(f: *mut StFamily, q: u64, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let f = family(f)?;
        let spec = build_witness(f, q).map_err(fail)?;
        put_json(out, &verify_witness(f, &spec).map_err(fail)?)
    })
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
