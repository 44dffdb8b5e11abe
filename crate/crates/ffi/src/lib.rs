//! C ABI for `fpt-core`.
//!
//! Conventions:
//! * every fallible function returns an [`FptStatus`] and writes results
//!   through out-pointers, which are left untouched on failure;
//! * monomial sets and polynomials are opaque handles released with their
//!   `_free` function;
//! * rationals cross the boundary as reduced `"num/den"` strings owned by
//!   the caller and released with [`fpt_string_free`];
//! * after a failure, [`fpt_last_error`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use fpt_core::charp::{self, reduce_mod_p, FpPoly, QPoly, TermBudget, DEFAULT_TERM_BUDGET};
use fpt_core::exactnum::{format_rational, multinomial_mod_p, parse_rational, Rational};
use fpt_core::polygeo::{self, MonomialSet};
use fpt_core::thresholds::{self, VerdictKind};
use fpt_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FptStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NotPrime = 5,
    Integrality = 6,
    BudgetExhausted = 7,
    NotApplicable = 8,
    SupportMismatch = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FptVerdict {
    Exact = 0,
    LowerBound = 1,
}

/// Opaque monomial set.
pub struct FptMonomialSet(MonomialSet);

/// Opaque polynomial over `F_p`.
pub struct FptPoly(FpPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(err: &Error) -> FptStatus {
    match err {
        Error::Parse { .. } => FptStatus::Parse,
        Error::NotPrime(_) => FptStatus::NotPrime,
        Error::Integrality(_) => FptStatus::Integrality,
        Error::BudgetExhausted { .. } => FptStatus::BudgetExhausted,
        Error::NotApplicable(_) => FptStatus::NotApplicable,
        Error::SupportMismatch | Error::SupportCollapse { .. } | Error::DenominatorDivisible { .. } => {
            FptStatus::SupportMismatch
        }
        _ => FptStatus::InvalidInput,
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard<F>(body: F) -> FptStatus
where
    F: FnOnce() -> Result<(), FptStatus> + UnwindSafe,
{
    match catch_unwind(body) {
        Ok(Ok(())) => FptStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            FptStatus::Panic
        }
    }
}

fn fail(err: Error) -> FptStatus {
    set_last_error(err.to_string());
    status_of(&err)
}

unsafe fn text_arg<'a>(ptr: *const c_char) -> Result<&'a str, FptStatus> {
    if ptr.is_null() {
        set_last_error("null string argument".into());
        return Err(FptStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8".into());
        FptStatus::InvalidUtf8
    })
}

unsafe fn handle<'a, T>(ptr: *const T) -> Result<&'a T, FptStatus> {
    ptr.as_ref().ok_or_else(|| {
        set_last_error("null handle".into());
        FptStatus::NullPointer
    })
}

fn check_out<T>(ptr: *mut T) -> Result<(), FptStatus> {
    if ptr.is_null() {
        set_last_error("null output pointer".into());
        return Err(FptStatus::NullPointer);
    }
    Ok(())
}

fn rational_string(q: &Rational) -> *mut c_char {
    CString::new(format_rational(q)).expect("digits only").into_raw()
}

fn budget(limit: u64) -> TermBudget {
    TermBudget::new(if limit == 0 { DEFAULT_TERM_BUDGET } else { limit })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fpt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fpt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a monomial list such as `"x^2, y^3"`; `num_vars = 0` infers the count.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fpt_monomial_set_parse(
    text: *const c_char,
    num_vars: usize,
    out: *mut *mut FptMonomialSet,
) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let text = text_arg(text)?;
        let vars = (num_vars > 0).then_some(num_vars);
        let ms = MonomialSet::parse(text, vars).map_err(fail)?;
        *out = Box::into_raw(Box::new(FptMonomialSet(ms)));
        Ok(())
    })
}

/// # Safety
/// `ms` must be NULL or a handle from [`fpt_monomial_set_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpt_monomial_set_free(ms: *mut FptMonomialSet) {
    if !ms.is_null() {
        drop(Box::from_raw(ms));
    }
}

/// # Safety
/// `ms` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fpt_monomial_set_len(ms: *const FptMonomialSet) -> usize {
    ms.as_ref().map_or(0, |m| m.0.len())
}

/// # Safety
/// `ms` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fpt_monomial_set_num_vars(ms: *const FptMonomialSet) -> usize {
    ms.as_ref().map_or(0, |m| m.0.num_vars())
}

/// Maximal coordinate sum of the splitting polytope.
///
/// # Safety
/// `ms` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fpt_alpha(ms: *const FptMonomialSet, out: *mut *mut c_char) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let ms = handle(ms)?;
        *out = rational_string(&polygeo::alpha(&ms.0));
        Ok(())
    })
}

/// Log canonical threshold of the monomial ideal.
///
/// # Safety
/// `ms` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fpt_lct(ms: *const FptMonomialSet, out: *mut *mut c_char) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let ms = handle(ms)?;
        *out = rational_string(&polygeo::lct_monomial(&ms.0));
        Ok(())
    })
}

/// Main-theorem verdict at `p`: the exact threshold or a proved lower bound.
///
/// # Safety
/// `ms` must be a live handle; `kind` and `value` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fpt_main_theorem(
    ms: *const FptMonomialSet,
    p: u64,
    kind: *mut FptVerdict,
    value: *mut *mut c_char,
) -> FptStatus {
    guard(|| {
        check_out(kind)?;
        check_out(value)?;
        let ms = handle(ms)?;
        let verdict = thresholds::main_theorem(&ms.0, p).map_err(fail)?;
        *kind = match verdict.kind {
            VerdictKind::Exact => FptVerdict::Exact,
            VerdictKind::LowerBound => FptVerdict::LowerBound,
        };
        *value = rational_string(&verdict.value);
        Ok(())
    })
}

/// Parses a polynomial with rational coefficients and reduces it modulo `p`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fpt_poly_parse(
    text: *const c_char,
    num_vars: usize,
    p: u64,
    out: *mut *mut FptPoly,
) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let text = text_arg(text)?;
        let vars = (num_vars > 0).then_some(num_vars);
        let f = QPoly::parse(text, vars).map_err(fail)?;
        let fp = reduce_mod_p(&f, p, false).map_err(fail)?;
        *out = Box::into_raw(Box::new(FptPoly(fp)));
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a handle from [`fpt_poly_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpt_poly_free(f: *mut FptPoly) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `nu_f(e)`. A `budget` of 0 selects the default term budget.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fpt_nu(f: *const FptPoly, e: u32, budget_limit: u64, out: *mut u64) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let f = handle(f)?;
        *out = charp::nu(&f.0, e, &budget(budget_limit)).map_err(fail)?;
        Ok(())
    })
}

/// Decides `fpt(f) >= lambda`; `lambda` is `"a/b"` with `(p^e - 1) lambda` integral.
///
/// # Safety
/// `f` must be a live handle, `lambda` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fpt_certify_lower(
    f: *const FptPoly,
    lambda: *const c_char,
    e: u32,
    budget_limit: u64,
    out: *mut bool,
) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let f = handle(f)?;
        let lambda = parse_rational(text_arg(lambda)?).map_err(fail)?;
        *out = charp::certify_lower(&f.0, &lambda, e, &budget(budget_limit)).map_err(fail)?;
        Ok(())
    })
}

/// Brackets `fpt(f)` in `(low, high]` from the `nu` table up to `e_max`.
/// `complete` is false when the budget stopped the table early.
///
/// # Safety
/// `f` must be a live handle; all out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn fpt_bracket(
    f: *const FptPoly,
    e_max: u32,
    budget_limit: u64,
    low: *mut *mut c_char,
    high: *mut *mut c_char,
    complete: *mut bool,
) -> FptStatus {
    guard(|| {
        check_out(low)?;
        check_out(high)?;
        check_out(complete)?;
        let f = handle(f)?;
        let report = charp::bracket(&f.0, e_max, &budget(budget_limit)).map_err(fail)?;
        *low = rational_string(&report.low);
        *high = rational_string(&report.high);
        *complete = report.complete;
        Ok(())
    })
}

/// `(sum parts)! / prod(parts!) mod p`.
///
/// # Safety
/// `parts` must point to `len` values (or be NULL with `len = 0`); `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fpt_multinomial_mod_p(parts: *const u64, len: usize, p: u64, out: *mut u64) -> FptStatus {
    guard(|| {
        check_out(out)?;
        let parts = if len == 0 {
            &[][..]
        } else {
            if parts.is_null() {
                set_last_error("null parts array".into());
                return Err(FptStatus::NullPointer);
            }
            std::slice::from_raw_parts(parts, len)
        };
        *out = multinomial_mod_p(parts, p).map_err(fail)?;
        Ok(())
    })
}
