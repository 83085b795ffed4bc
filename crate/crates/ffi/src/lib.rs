//! C ABI for the pgonal descent library.
//!
//! Problems and results cross the boundary as opaque handles built from the
//! library's JSON documents. Every fallible call returns a [`PgonalStatus`];
//! on failure the message is kept per thread and read with
//! [`pgonal_last_error`].
//!
//! Strings returned through `char **out` are owned by the caller and must be
//! released with [`pgonal_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pgonal::descent::{certify, descend, DescentOptions, DescentResult};
use pgonal::error::Error;
use pgonal::exactfield::DEFAULT_MAX_DEGREE;
use pgonal::exceptional::classify;
use pgonal::format::{
    envelope, parse_payload, problem_from_json, result_from_json, result_to_json, to_canonical_string, Problem,
};

/// Outcome of a C ABI call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgonalStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    ParseError = 10,
    SchemaError = 11,
    /// Malformed field, point, map or curve data.
    InvalidInput = 12,
    DegreeTooLarge = 13,
    GenusTooSmall = 14,
    /// The (m, p) pair admits several p-gonal groups.
    ExceptionalCase = 20,
    NotQuasiRational = 21,
    NoMatchingMap = 22,
    NonUniqueMap = 23,
    AmbiguousCharacter = 24,
    /// Cocycle or holonomy checks failed.
    CocycleError = 25,
    /// A certified norm obstruction; no descent through this route.
    SplittingFailed = 26,
    CertificateInvalid = 27,
    /// Any other library error; the message names it.
    Other = 99,
}

impl From<&Error> for PgonalStatus {
    fn from(e: &Error) -> Self {
        use PgonalStatus as S;
        match e {
            Error::ParseError { .. } => S::ParseError,
            Error::SchemaError { .. } => S::SchemaError,
            Error::DegreeTooLarge(..) => S::DegreeTooLarge,
            Error::GenusTooSmall(_) => S::GenusTooSmall,
            Error::ExceptionalCase(..) => S::ExceptionalCase,
            Error::NotQuasiRational(_) => S::NotQuasiRational,
            Error::NoMatchingMap(_) => S::NoMatchingMap,
            Error::NonUniqueMap(_) => S::NonUniqueMap,
            Error::AmbiguousCharacter(_) | Error::CharacterNotMultiplicative(_) => S::AmbiguousCharacter,
            Error::CocycleViolation(..) | Error::HolonomyNotScalar => S::CocycleError,
            Error::SplittingFailed(_) => S::SplittingFailed,
            Error::CertificateInvalid(_) | Error::CoefficientNotInSubfield => S::CertificateInvalid,
            Error::ReducibleMinPoly
            | Error::NotMonic
            | Error::NotAnAutomorphism
            | Error::NotAGroup
            | Error::SingularMap
            | Error::ZeroPoint
            | Error::DegenerateTriple
            | Error::NotPrime(_)
            | Error::MultiplicityOutOfRange(_)
            | Error::BadMultiplicitySum
            | Error::DuplicateBranchPoint
            | Error::InfinityPresent
            | Error::BadParameter(_)
            | Error::InconsistentFlags(_) => S::InvalidInput,
            _ => S::Other,
        }
    }
}

/// A parsed descent problem.
pub struct PgonalProblem {
    inner: Problem,
}

/// A descent result, either computed or read back from a document.
pub struct PgonalResult {
    inner: DescentResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    // interior NULs would truncate the message silently
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(PgonalStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail((&e).into(), format!("{}: {e}", e.code_name()))
    }
}

fn null(what: &str) -> Fail {
    Fail(PgonalStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure and converts panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PgonalStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PgonalStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PgonalStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PgonalStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null after a success.
///
/// The pointer stays valid until the next pgonal call on the same thread.
#[no_mangle]
pub extern "C" fn pgonal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pgonal_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pgonal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Reads a `problem` document.
///
/// `seed` drives the primitive-element search when the context lists a
/// subfield. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_problem_parse(
    json: *const c_char,
    seed: u64,
    out: *mut *mut PgonalProblem,
) -> PgonalStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let payload = parse_payload(text(json, "json")?, "problem")?;
        let inner = problem_from_json(&payload, "payload", seed)?;
        *out = Box::into_raw(Box::new(PgonalProblem { inner }));
        Ok(())
    })
}

/// Genus of the problem's curve.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_problem_genus(problem: *const PgonalProblem, out: *mut i64) -> PgonalStatus {
    guard(|| {
        let pr = handle(problem, "problem")?;
        *out_ptr(out, "out")? = pr.inner.curve.genus();
        Ok(())
    })
}

/// Releases a problem handle. Null is ignored.
///
/// # Safety
/// `problem` must come from [`pgonal_problem_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pgonal_problem_free(problem: *mut PgonalProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Descends the problem and certifies the result.
///
/// A `max_field_degree` of zero selects the library default.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_descend(
    problem: *const PgonalProblem,
    seed: u64,
    max_field_degree: usize,
    out: *mut *mut PgonalResult,
) -> PgonalStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let pr = &handle(problem, "problem")?.inner;
        let opts = DescentOptions {
            assume_unique: pr.assume_unique,
            max_field_degree: if max_field_degree == 0 { DEFAULT_MAX_DEGREE } else { max_field_degree },
            seed,
        };
        let r = descend(&pr.curve, &pr.context, &opts)?;
        certify(&pr.curve, &pr.context, &r)?;
        *out = Box::into_raw(Box::new(PgonalResult { inner: r }));
        Ok(())
    })
}

/// Reads a `result` document, for instance one written by another process.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_result_parse(
    json: *const c_char,
    seed: u64,
    out: *mut *mut PgonalResult,
) -> PgonalStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let payload = parse_payload(text(json, "json")?, "result")?;
        let inner = result_from_json(&payload, "payload", seed)?;
        *out = Box::into_raw(Box::new(PgonalResult { inner }));
        Ok(())
    })
}

/// Checks every certificate clause of `result` against `problem`.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn pgonal_verify(problem: *const PgonalProblem, result: *const PgonalResult) -> PgonalStatus {
    guard(|| {
        let pr = &handle(problem, "problem")?.inner;
        let r = &handle(result, "result")?.inner;
        certify(&pr.curve, &pr.context, r)?;
        Ok(())
    })
}

/// Degree of the output field over the base field.
///
/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_result_degree(result: *const PgonalResult, out: *mut usize) -> PgonalStatus {
    guard(|| {
        let r = handle(result, "result")?;
        *out_ptr(out, "out")? = r.inner.degrees.f_over_k;
        Ok(())
    })
}

/// The canonical `result` document. Free `*out` with [`pgonal_string_free`].
///
/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_result_to_json(result: *const PgonalResult, out: *mut *mut c_char) -> PgonalStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let r = handle(result, "result")?;
        *out = owned_string(to_canonical_string(&envelope("result", result_to_json(&r.inner))));
        Ok(())
    })
}

/// Releases a result handle. Null is ignored.
///
/// # Safety
/// `result` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pgonal_result_free(result: *mut PgonalResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Whether curves with `m` branch points over `p` have a unique p-gonal group.
///
/// # Safety
/// `unique` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pgonal_classify(m: usize, p: u64, unique: *mut bool) -> PgonalStatus {
    guard(|| {
        let unique = out_ptr(unique, "unique")?;
        *unique = classify(m, p)?.is_unique();
        Ok(())
    })
}
