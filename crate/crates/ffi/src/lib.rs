//! C interface to `nilalg`.
//!
//! Every fallible function returns a [`NilalgStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`nilalg_last_error`] on the same thread. Strings returned by the library
//! are owned by the caller and released with [`nilalg_string_free`];
//! ideals are released with [`nilalg_ideal_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nilalg::bounds::{best_bounds, BoundFlags};
use nilalg::nil_ideal::Degree;
use nilalg::rewrite4::Canonicalizer;
use nilalg::{Error, FormalSum, MultiDegree, NilIdeal, PartialOrderKind, WordOrder};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// A size guard or timeout was hit.
    Guard = 4,
    /// The operation's hypothesis does not hold for these parameters.
    Hypothesis = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilalgOrder {
    Gtr = 0,
    Succ = 1,
}

/// Opaque handle to an ideal of `x^n = 0` with its component cache.
pub struct NilalgIdeal {
    inner: NilIdeal,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NilalgStatus {
    match e {
        Error::Parse { .. } | Error::InvalidWord(_) => NilalgStatus::Parse,
        Error::TooLarge { .. } | Error::Timeout(_) => NilalgStatus::Guard,
        Error::Hypothesis(_) | Error::MixedClasses(..) | Error::CanonicalDefect(_) => {
            NilalgStatus::Hypothesis
        }
        _ => NilalgStatus::InvalidArgument,
    }
}

enum Fail {
    Null,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> NilalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NilalgStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            NilalgStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            NilalgStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidArgument("string is not UTF-8".into())))
}

unsafe fn ideal_arg<'a>(h: *const NilalgIdeal) -> Result<&'a NilIdeal, Fail> {
    h.as_ref().map(|h| &h.inner).ok_or(Fail::Null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior nul removed")
        .into_raw()
}

/// The message of the last failure on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nilalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn nilalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nilalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the ideal of `x^n = 0` over `F_p`, or the rationals for `p = 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nilalg_ideal_new(
    n: u32,
    p: u64,
    out: *mut *mut NilalgIdeal,
) -> NilalgStatus {
    guard(|| {
        let inner = NilIdeal::new(n, p)?;
        write(out, Box::into_raw(Box::new(NilalgIdeal { inner })))
    })
}

/// # Safety
/// `h` must be null or a handle from [`nilalg_ideal_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nilalg_ideal_free(h: *mut NilalgIdeal) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Whether the element written in `expr` lies in the ideal.
///
/// # Safety
/// `h` must be a live handle, `expr` a nul-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nilalg_ideal_contains(
    h: *const NilalgIdeal,
    expr: *const c_char,
    out: *mut bool,
) -> NilalgStatus {
    guard(|| {
        let id = ideal_arg(h)?;
        let f = FormalSum::parse(id.field(), str_arg(expr)?)?;
        write(out, id.contains(&f)?)
    })
}

/// Normal form of `expr` modulo the ideal, as text.
///
/// # Safety
/// As for [`nilalg_ideal_contains`]; free the result with
/// [`nilalg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nilalg_ideal_reduce(
    h: *const NilalgIdeal,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> NilalgStatus {
    guard(|| {
        let id = ideal_arg(h)?;
        let f = FormalSum::parse(id.field(), str_arg(expr)?)?;
        let g = id.reduce(&f, WordOrder::Profile)?;
        write(out, owned_string(g.to_string()))
    })
}

/// Dimension of the quotient in multidegree `delta[0..d]`.
///
/// # Safety
/// `delta` must point to `d` readable values and `out` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nilalg_ideal_quotient_dimension(
    h: *const NilalgIdeal,
    delta: *const u32,
    d: usize,
    out: *mut usize,
) -> NilalgStatus {
    guard(|| {
        let id = ideal_arg(h)?;
        if delta.is_null() {
            return Err(Fail::Null);
        }
        let v = std::slice::from_raw_parts(delta, d).to_vec();
        write(out, id.quotient_dimension(&MultiDegree::new(v))?)
    })
}

/// Nilpotency degree on `d` letters, searching degrees up to `max_deg`.
/// Writes 0 when every degree up to `max_deg` is nonzero. If `json` is not
/// null the full report is written there.
///
/// # Safety
/// `h` must be a live handle, `degree` valid for writes, `json` null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn nilalg_nilpotency_degree(
    h: *const NilalgIdeal,
    d: usize,
    max_deg: u32,
    degree: *mut u32,
    json: *mut *mut c_char,
) -> NilalgStatus {
    guard(|| {
        let id = ideal_arg(h)?;
        let r = id.nilpotency_degree(d, max_deg)?;
        let c = match r.degree {
            Degree::Exact(c) => c,
            Degree::ExceedsMaxDeg => 0,
        };
        write(degree, c)?;
        if !json.is_null() {
            let s = serde_json::to_string(&r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            json.write(owned_string(s));
        }
        Ok(())
    })
}

/// Whether `expr` is zero modulo the ideal and words strictly greater in
/// the chosen partial order.
///
/// # Safety
/// As for [`nilalg_ideal_contains`].
#[no_mangle]
pub unsafe extern "C" fn nilalg_equiv_zero(
    h: *const NilalgIdeal,
    expr: *const c_char,
    order: NilalgOrder,
    out: *mut bool,
) -> NilalgStatus {
    guard(|| {
        let id = ideal_arg(h)?;
        let f = FormalSum::parse(id.field(), str_arg(expr)?)?;
        let kind = match order {
            NilalgOrder::Gtr => PartialOrderKind::Gtr,
            NilalgOrder::Succ => PartialOrderKind::Succ,
        };
        write(out, id.equiv_zero(&f, kind)?)
    })
}

/// Canonical form for `n = 4` over characteristic `p != 2`.
///
/// # Safety
/// `expr` must be a nul-terminated string and `out` valid for writes; free
/// the result with [`nilalg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nilalg_canonicalize4(
    p: u64,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> NilalgStatus {
    guard(|| {
        let c = Canonicalizer::new(p)?;
        let f = FormalSum::parse(c.ideal().field(), str_arg(expr)?)?;
        write(out, owned_string(c.canonicalize(&f)?.to_string()))
    })
}

/// All bounds on `C_{n,d}` with the best upper and lower ones, as JSON.
///
/// # Safety
/// `out` must be valid for writes; free the result with
/// [`nilalg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nilalg_bounds_json(
    n: u32,
    d: u64,
    p: u64,
    assume_conjecture_n2: bool,
    out: *mut *mut c_char,
) -> NilalgStatus {
    guard(|| {
        let s = best_bounds(
            n,
            d,
            p,
            BoundFlags {
                assume_conjecture_n2,
            },
        )?;
        let text = serde_json::to_string(&s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        write(out, owned_string(text))
    })
}
