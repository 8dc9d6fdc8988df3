//! C interface to `z8codes`.
//!
//! Codes live behind the opaque `Z8Code` handle, created by
//! `z8_code_from_text` / `z8_code_from_family` and released with
//! `z8_code_free`. Every fallible call returns a `Z8Status` and writes its
//! result through an out-pointer; on failure `z8_last_error_message` holds a
//! description for the calling thread. Strings returned by the library must
//! be released with `z8_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use z8codes::code::parse_matrix;
use z8codes::covering::covering_radius;
use z8codes::families::{self, FamilySpec};
use z8codes::{Budgets, Error, LinearCode, Metric, OctVector};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z8Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Parameter = 4,
    Dimension = 5,
    Budget = 6,
    Consistency = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z8Metric {
    Hamming = 0,
    Lee = 1,
    Euclidean = 2,
    Homogeneous = 3,
}

impl From<Z8Metric> for Metric {
    fn from(m: Z8Metric) -> Self {
        match m {
            Z8Metric::Hamming => Metric::Hamming,
            Z8Metric::Lee => Metric::Lee,
            Z8Metric::Euclidean => Metric::Euclidean,
            Z8Metric::Homogeneous => Metric::Homogeneous,
        }
    }
}

/// Opaque handle to a linear code over Z8.
pub struct Z8Code {
    inner: LinearCode,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(Z8Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => Z8Status::Parse,
            Error::Parameter(_) => Z8Status::Parameter,
            Error::Dimension { .. } => Z8Status::Dimension,
            Error::Budget { .. } => Z8Status::Budget,
            Error::Consistency(_) => Z8Status::Consistency,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(Z8Status::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Z8Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Z8Status::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside z8codes");
            Z8Status::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(Z8Status::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn code<'a>(c: *const Z8Code) -> Result<&'a LinearCode, Failure> {
    c.as_ref().map(|c| &c.inner).ok_or_else(|| null("code"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn digits(v: *const u8, n: usize) -> Result<OctVector, Failure> {
    if v.is_null() {
        return Err(null("vector"));
    }
    Ok(OctVector::new(std::slice::from_raw_parts(v, n).to_vec())?)
}

fn boxed(c: LinearCode) -> *mut Z8Code {
    Box::into_raw(Box::new(Z8Code { inner: c }))
}

/// Parses a generator matrix (one row per line, digits separated by spaces,
/// `#` comments) into a new code.
///
/// # Safety
/// `matrix` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn z8_code_from_text(matrix: *const c_char, out: *mut *mut Z8Code) -> Z8Status {
    guard(|| {
        let rows = parse_matrix(text(matrix, "matrix")?)?;
        let c = LinearCode::new(rows)?;
        write(out, boxed(c), "out")
    })
}

/// Builds a family code from a spec such as `simplex-alpha:k=2` or `octacode`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn z8_code_from_family(spec: *const c_char, out: *mut *mut Z8Code) -> Z8Status {
    guard(|| {
        let spec: FamilySpec = text(spec, "spec")?.parse()?;
        let c = families::build(&spec)?;
        write(out, boxed(c), "out")
    })
}

/// Releases a code. Null is ignored.
///
/// # Safety
/// `code` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn z8_code_free(code: *mut Z8Code) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_code_length(code: *const Z8Code, out: *mut usize) -> Z8Status {
    guard(|| write(out, self::code(code)?.len(), "out"))
}

/// Writes the type (k0, k1, k2) into `out[0..3]`.
///
/// # Safety
/// `code` must be a live handle and `out` must point to three writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn z8_code_type(code: *const Z8Code, out: *mut usize) -> Z8Status {
    guard(|| {
        let k = self::code(code)?.ktype().to_vec();
        if out.is_null() {
            return Err(null("out"));
        }
        for (i, &x) in k.iter().take(3).enumerate() {
            out.add(i).write(x);
        }
        Ok(())
    })
}

/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_code_cardinality_log2(code: *const Z8Code, out: *mut u64) -> Z8Status {
    guard(|| write(out, self::code(code)?.cardinality_log2(), "out"))
}

/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_code_dual(code: *const Z8Code, out: *mut *mut Z8Code) -> Z8Status {
    guard(|| {
        let d = self::code(code)?.dual()?;
        write(out, boxed(d), "out")
    })
}

/// Exact covering radius at the default work budgets.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_covering_radius(code: *const Z8Code, metric: Z8Metric, out: *mut u32) -> Z8Status {
    guard(|| {
        let r = covering_radius(self::code(code)?, metric.into(), &Budgets::default())?;
        write(out, r.value, "out")
    })
}

/// Minimum nonzero weight by enumeration; 0 for the zero code.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_min_weight(code: *const Z8Code, metric: Z8Metric, out: *mut u32) -> Z8Status {
    guard(|| {
        let c = self::code(code)?;
        let budget = Budgets::default().enumeration;
        if c.cardinality_log2() > u64::from(budget.ilog2()) {
            return Err(Error::Budget {
                what: "codeword enumeration",
                estimated: format!("2^{}", c.cardinality_log2()),
                limit: budget.to_string(),
            }
            .into());
        }
        write(out, c.min_weight(metric.into())?.unwrap_or(0), "out")
    })
}

/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_code_is_self_orthogonal(code: *const Z8Code, out: *mut bool) -> Z8Status {
    guard(|| write(out, self::code(code)?.is_self_orthogonal(), "out"))
}

/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn z8_code_is_self_dual(code: *const Z8Code, out: *mut bool) -> Z8Status {
    guard(|| write(out, self::code(code)?.is_self_dual(), "out"))
}

/// Generator matrix in the text form accepted by `z8_code_from_text`.
///
/// # Safety
/// `code` must be a live handle and `out` writable; free the string with
/// `z8_string_free`.
#[no_mangle]
pub unsafe extern "C" fn z8_code_generator_text(code: *const Z8Code, out: *mut *mut c_char) -> Z8Status {
    guard(|| {
        let s = CString::new(self::code(code)?.to_matrix_text()).expect("matrix text has no NUL");
        write(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn z8_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Gray image of `n` symbols, written as `4 * n` bits (one per byte).
///
/// # Safety
/// `v` must hold `n` readable bytes and `out_bits` `4 * n` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn z8_gray_map(v: *const u8, n: usize, out_bits: *mut u8) -> Z8Status {
    guard(|| {
        let image = digits(v, n)?.gray_map();
        if out_bits.is_null() {
            return Err(null("out_bits"));
        }
        ptr::copy_nonoverlapping(image.bits().as_ptr(), out_bits, image.len());
        Ok(())
    })
}

/// # Safety
/// `v` must hold `n` readable bytes and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn z8_weight(v: *const u8, n: usize, metric: Z8Metric, out: *mut u32) -> Z8Status {
    guard(|| write(out, digits(v, n)?.weight(metric.into()), "out"))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn z8_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn z8_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
