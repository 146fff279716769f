//! C ABI for the `dioph` exact diophantine solver.
//!
//! Conventions:
//! - Handles (`DiophMatrix`, `DiophReport`) are opaque; create them through
//!   the constructors and release them with the matching `_free` function.
//! - Every fallible call returns a [`DiophStatus`]; `DIOPH_STATUS_OK` is 0.
//!   On failure, [`dioph_last_error`] returns a thread-local message that
//!   stays valid until the next failing call on the same thread.
//! - Out-parameters are written only on `DIOPH_STATUS_OK`, with one
//!   exception: `dioph_solve` also writes the report when it returns
//!   `DIOPH_STATUS_VERIFICATION_FAILED`, so the caller can inspect which
//!   check failed.
//! - Panics never cross the boundary; they surface as `DIOPH_STATUS_PANIC`.

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dioph::{
    parse_matrix, reduce_report, solve_report, structure_report, Error, Int, Matrix, Report,
    SolveMethod, SolveOptions,
};

/// Result of every fallible call in this API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiophStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input text or JSON does not describe a rectangular integer matrix.
    ParseError = 3,
    /// Operand shapes or values do not fit the requested operation.
    ShapeError = 4,
    /// The method requires a prime `d` but it is composite (or a unit).
    NotPrime = 5,
    /// The ring instance does not support the operation.
    Unsupported = 6,
    /// The randomized order-vector search was exhausted.
    NotLargestFactor = 7,
    /// A quotient was requested for lattices without inclusion.
    NotASublattice = 8,
    /// An enumeration would exceed the configured bound.
    BoundExceeded = 9,
    /// An internal invariant failed; indicates a bug, not bad input.
    InternalError = 10,
    /// `verify` was requested and at least one check failed.
    VerificationFailed = 11,
    /// A panic was caught at the ABI boundary.
    Panic = 12,
}

/// Basis construction method for `dioph_solve`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiophMethod {
    /// Congruence kernel of `K` modulo `d` (the default).
    Direct = 0,
    /// Trailing columns of the right transform of the Smith form of `A`.
    Snf = 1,
    /// Lift a basis of `M` along the invariant factors of `S/M`.
    LiftInv = 2,
    /// Lift a basis of `M` along the elementary divisors of `S/M`.
    LiftElem = 3,
    /// Lift a basis of `M` one prime of the index `[S : M]` at a time.
    LiftPrime = 4,
    /// Shortcut valid only when `d` is prime.
    PrimeD = 5,
}

impl From<DiophMethod> for SolveMethod {
    fn from(m: DiophMethod) -> Self {
        match m {
            DiophMethod::Direct => SolveMethod::Direct,
            DiophMethod::Snf => SolveMethod::Snf,
            DiophMethod::LiftInv => SolveMethod::LiftInv,
            DiophMethod::LiftElem => SolveMethod::LiftElem,
            DiophMethod::LiftPrime => SolveMethod::LiftPrime,
            DiophMethod::PrimeD => SolveMethod::PrimeD,
        }
    }
}

/// Opaque handle to an exact integer matrix.
pub struct DiophMatrix(Matrix<Int>);

/// Opaque handle to a computed report.
pub struct DiophReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let cstring = CString::new(msg.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn fail(status: DiophStatus, msg: &str) -> DiophStatus {
    set_last_error(msg);
    status
}

fn status_of(e: &Error) -> DiophStatus {
    match e {
        Error::Parse(_) => DiophStatus::ParseError,
        Error::Shape(_) | Error::RankOutOfScope { .. } => DiophStatus::ShapeError,
        Error::NotPrime(_) => DiophStatus::NotPrime,
        Error::UnsupportedRingOp(_) => DiophStatus::Unsupported,
        Error::NotLargestFactor(_) => DiophStatus::NotLargestFactor,
        Error::NotASublattice(_) => DiophStatus::NotASublattice,
        Error::BoundExceeded { .. } => DiophStatus::BoundExceeded,
        Error::Internal(_) => DiophStatus::InternalError,
    }
}

fn fail_with(e: &Error) -> DiophStatus {
    fail(status_of(e), &e.to_string())
}

/// Run a body under `catch_unwind`, translating panics to a status.
fn guarded<F: FnOnce() -> DiophStatus>(body: F) -> DiophStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(DiophStatus::Panic, "caught a panic at the ABI boundary"),
    }
}

/// Box a value and store it through an out-pointer.
///
/// # Safety
/// `out` must be a valid, writable pointer.
unsafe fn deliver<T>(out: *mut *mut T, value: T) -> DiophStatus {
    unsafe { out.write(Box::into_raw(Box::new(value))) };
    DiophStatus::Ok
}

/// Last error message of this thread, or null if the last call succeeded.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dioph_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Parse a matrix from text: either the plain format (header `m n`, then
/// `m` rows of integers) or JSON (`{"matrix": [[...]]}`, decimal strings
/// for entries beyond 64 bits).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_matrix_parse(
    text: *const c_char,
    out: *mut *mut DiophMatrix,
) -> DiophStatus {
    if text.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "text and out must be non-null");
    }
    let text = unsafe { CStr::from_ptr(text) };
    guarded(|| {
        let Ok(text) = text.to_str() else {
            return fail(DiophStatus::InvalidUtf8, "input text is not valid UTF-8");
        };
        match parse_matrix(text) {
            Ok(a) => unsafe { deliver(out, DiophMatrix(a)) },
            Err(e) => fail_with(&e),
        }
    })
}

/// Build a matrix from a row-major `rows x cols` array of 64-bit entries.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_matrix_from_i64(
    rows: usize,
    cols: usize,
    entries: *const i64,
    out: *mut *mut DiophMatrix,
) -> DiophStatus {
    if entries.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "entries and out must be non-null");
    }
    let Some(len) = rows.checked_mul(cols) else {
        return fail(DiophStatus::ShapeError, "rows * cols overflows");
    };
    if len == 0 {
        return fail(DiophStatus::ShapeError, "matrix dimensions must be positive");
    }
    let data = unsafe { std::slice::from_raw_parts(entries, len) };
    guarded(|| {
        let rows: Vec<Vec<Int>> = data
            .chunks_exact(cols)
            .map(|row| row.iter().copied().map(Int::from).collect())
            .collect();
        match Matrix::from_rows(rows) {
            Ok(a) => unsafe { deliver(out, DiophMatrix(a)) },
            Err(e) => fail_with(&e),
        }
    })
}

/// Release a matrix handle. Null is a no-op.
///
/// # Safety
/// `m` must have come from a constructor of this API and not been freed.
#[no_mangle]
pub unsafe extern "C" fn dioph_matrix_free(m: *mut DiophMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Reduce the system: rank, nullity, `d`, `K`, and the column permutation.
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_reduce(
    m: *const DiophMatrix,
    out: *mut *mut DiophReport,
) -> DiophStatus {
    if m.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "matrix and out must be non-null");
    }
    let a = unsafe { &(*m).0 };
    guarded(|| match reduce_report(a) {
        Ok(report) => unsafe { deliver(out, DiophReport(report)) },
        Err(e) => fail_with(&e),
    })
}

/// Reduction plus the module structure of `S/M` and `U/S`.
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_structure(
    m: *const DiophMatrix,
    out: *mut *mut DiophReport,
) -> DiophStatus {
    if m.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "matrix and out must be non-null");
    }
    let a = unsafe { &(*m).0 };
    guarded(|| match structure_report(a) {
        Ok(report) => unsafe { deliver(out, DiophReport(report)) },
        Err(e) => fail_with(&e),
    })
}

/// Compute a basis of the solution lattice `S`.
///
/// `verify` re-checks the basis against independent oracles; a mismatch
/// returns `DIOPH_STATUS_VERIFICATION_FAILED` with the report still written.
/// `seed` drives the randomized search inside the lifting methods.
/// `brute_bound` caps the exhaustive check (0 selects the built-in default).
///
/// # Safety
/// `m` must be a live matrix handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_solve(
    m: *const DiophMatrix,
    method: DiophMethod,
    verify: bool,
    seed: u64,
    brute_bound: u64,
    out: *mut *mut DiophReport,
) -> DiophStatus {
    if m.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "matrix and out must be non-null");
    }
    let a = unsafe { &(*m).0 };
    guarded(|| {
        let opts = SolveOptions {
            method: method.into(),
            verify,
            seed,
            brute_bound: if brute_bound == 0 {
                SolveOptions::default().brute_bound
            } else {
                brute_bound
            },
        };
        match solve_report(a, &opts) {
            Ok(report) => {
                let failed = report.verified == Some(false);
                let status = unsafe { deliver(out, DiophReport(report)) };
                if failed {
                    fail(
                        DiophStatus::VerificationFailed,
                        "the computed basis did not pass every check",
                    )
                } else {
                    status
                }
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Serialize a report as JSON. The string must be released with
/// `dioph_string_free`.
///
/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_report_to_json(
    r: *const DiophReport,
    out: *mut *mut c_char,
) -> DiophStatus {
    if r.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "report and out must be non-null");
    }
    let report = unsafe { &(*r).0 };
    guarded(|| {
        match CString::new(report.to_json()) {
            Ok(json) => {
                unsafe { out.write(json.into_raw()) };
                DiophStatus::Ok
            }
            // JSON output never contains NUL; this is unreachable in practice.
            Err(_) => fail(DiophStatus::InternalError, "JSON contained a NUL byte"),
        }
    })
}

/// Render a report as the human-readable table. The string must be released
/// with `dioph_string_free`.
///
/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dioph_report_to_text(
    r: *const DiophReport,
    out: *mut *mut c_char,
) -> DiophStatus {
    if r.is_null() || out.is_null() {
        return fail(DiophStatus::NullArgument, "report and out must be non-null");
    }
    let report = unsafe { &(*r).0 };
    guarded(|| match CString::new(report.render_human()) {
        Ok(text) => {
            unsafe { out.write(text.into_raw()) };
            DiophStatus::Ok
        }
        Err(_) => fail(DiophStatus::InternalError, "text contained a NUL byte"),
    })
}

/// Verification verdict of a report: 1 verified, 0 failed, -1 not recorded.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn dioph_report_verified(r: *const DiophReport) -> i32 {
    if r.is_null() {
        return -1;
    }
    match unsafe { &(*r).0 }.verified {
        Some(true) => 1,
        Some(false) => 0,
        None => -1,
    }
}

/// Release a report handle. Null is a no-op.
///
/// # Safety
/// `r` must have come from this API and not been freed.
#[no_mangle]
pub unsafe extern "C" fn dioph_report_free(r: *mut DiophReport) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

/// Release a string returned by this API. Null is a no-op.
///
/// # Safety
/// `s` must have come from this API and not been freed.
#[no_mangle]
pub unsafe extern "C" fn dioph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
