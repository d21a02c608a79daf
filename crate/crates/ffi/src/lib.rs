//! C interface to `mer-core`.
//!
//! Point sets and results are opaque handles created and freed through this
//! API. Every fallible call returns a [`MerStatus`]; on failure the message
//! is available from [`mer_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mer_core::io::ResultDocument;
use mer_core::{solve_exact, solve_oracle, solve_sampled, Error, Point, PointSet, SampleParams, SolveReport};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    InvalidT = 3,
    Infeasible = 4,
    CollinearInput = 5,
    SizeGuard = 6,
    InvalidParams = 7,
    Panic = 8,
}

/// Opaque point set.
pub struct MerPointSet {
    inner: PointSet,
}

/// Opaque solver result.
pub struct MerResult {
    report: SolveReport,
    n: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> MerStatus {
    match e {
        Error::InvalidT { .. } => MerStatus::InvalidT,
        Error::Infeasible { .. } => MerStatus::Infeasible,
        Error::CollinearInput { .. } => MerStatus::CollinearInput,
        Error::SizeGuard { .. } => MerStatus::SizeGuard,
        Error::InvalidSampleParams(_) | Error::InvalidArgument(_) => MerStatus::InvalidParams,
        Error::EmptyPointSet
        | Error::NonFinite { .. }
        | Error::DegenerateFrame { .. }
        | Error::UndefinedOrder
        | Error::DegenerateRectangle
        | Error::InvalidSupports { .. }
        | Error::TooFewPoints { .. }
        | Error::Parse { .. }
        | Error::Io(_) => MerStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), MerStatus>) -> MerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MerStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            MerStatus::Panic
        }
    }
}

fn fail(e: Error) -> MerStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> MerStatus {
    set_error(format!("{what} is null"));
    MerStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, MerStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or null if none failed.
/// The string stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn mer_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mer_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a point set from `n` coordinates in `xs` and `ys`.
///
/// # Safety
/// `xs` and `ys` must point to `n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mer_pointset_new(
    xs: *const f64,
    ys: *const f64,
    n: usize,
    out: *mut *mut MerPointSet,
) -> MerStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if n > 0 && (xs.is_null() || ys.is_null()) {
            return Err(null("coordinate array"));
        }
        let pts: Vec<Point> = if n == 0 {
            Vec::new()
        } else {
            let (xs, ys) = (std::slice::from_raw_parts(xs, n), std::slice::from_raw_parts(ys, n));
            xs.iter().zip(ys).map(|(&x, &y)| Point::new(x, y)).collect()
        };
        let inner = PointSet::new(pts).map_err(fail)?;
        *out = Box::into_raw(Box::new(MerPointSet { inner }));
        Ok(())
    })
}

/// # Safety
/// `ps` must come from [`mer_pointset_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mer_pointset_free(ps: *mut MerPointSet) {
    if !ps.is_null() {
        drop(Box::from_raw(ps));
    }
}

/// # Safety
/// `ps` must be a live point set or null.
#[no_mangle]
pub unsafe extern "C" fn mer_pointset_len(ps: *const MerPointSet) -> usize {
    ps.as_ref().map_or(0, |p| p.inner.len())
}

/// Whether the set is handled with exact integer arithmetic.
///
/// # Safety
/// `ps` must be a live point set or null.
#[no_mangle]
pub unsafe extern "C" fn mer_pointset_is_integer(ps: *const MerPointSet) -> bool {
    ps.as_ref().is_some_and(|p| p.inner.integer_mode())
}

unsafe fn solve_into(
    ps: *const MerPointSet,
    out: *mut *mut MerResult,
    solve: impl FnOnce(&PointSet) -> mer_core::Result<SolveReport>,
) -> MerStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ps = &deref(ps, "point set")?.inner;
        let report = solve(ps).map_err(fail)?;
        *out = Box::into_raw(Box::new(MerResult { report, n: ps.len() }));
        Ok(())
    })
}

/// Exact minimum-area rectangle leaving out at most `t` points.
///
/// # Safety
/// `ps` must be a live point set; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mer_solve_exact(
    ps: *const MerPointSet,
    t: usize,
    collinear_robust: bool,
    out: *mut *mut MerResult,
) -> MerStatus {
    solve_into(ps, out, |p| solve_exact(p, t, collinear_robust))
}

/// Brute-force reference solver for small inputs.
///
/// # Safety
/// `ps` must be a live point set; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mer_solve_oracle(ps: *const MerPointSet, t: usize, out: *mut *mut MerResult) -> MerStatus {
    solve_into(ps, out, |p| solve_oracle(p, t))
}

/// Approximate solver on a seeded random sample.
///
/// # Safety
/// `ps` must be a live point set; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mer_solve_sampled(
    ps: *const MerPointSet,
    t: usize,
    epsilon: f64,
    c: f64,
    seed: u64,
    collinear_robust: bool,
    out: *mut *mut MerResult,
) -> MerStatus {
    solve_into(ps, out, |p| {
        let params = SampleParams::new(epsilon, c, seed, p.len(), t)?;
        solve_sampled(p, t, &params, collinear_robust)
    })
}

/// # Safety
/// `r` must come from a solve call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mer_result_free(r: *mut MerResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Rectangle area, or NaN for a null handle.
///
/// # Safety
/// `r` must be a live result or null.
#[no_mangle]
pub unsafe extern "C" fn mer_result_area(r: *const MerResult) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.report.area().value())
}

/// Writes the corners counterclockwise as `x0, y0, ..., x3, y3`.
///
/// # Safety
/// `r` must be a live result; `out` must have room for 8 doubles.
#[no_mangle]
pub unsafe extern "C" fn mer_result_corners(r: *const MerResult, out: *mut f64) -> MerStatus {
    guard(|| {
        let r = deref(r, "result")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let out = std::slice::from_raw_parts_mut(out, 8);
        for (k, p) in r.report.rectangle.corners.iter().enumerate() {
            out[2 * k] = p.x;
            out[2 * k + 1] = p.y;
        }
        Ok(())
    })
}

/// Writes the five support indices: two base points, the opposite point
/// and the two side points.
///
/// # Safety
/// `r` must be a live result; `out` must have room for 5 values.
#[no_mangle]
pub unsafe extern "C" fn mer_result_supports(r: *const MerResult, out: *mut usize) -> MerStatus {
    guard(|| {
        let r = deref(r, "result")?;
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, 5).copy_from_slice(&r.report.rectangle.supports);
        Ok(())
    })
}

/// # Safety
/// `r` must be a live result or null.
#[no_mangle]
pub unsafe extern "C" fn mer_result_enclosed_count(r: *const MerResult) -> usize {
    r.as_ref().map_or(0, |r| r.report.enclosed_indices.len())
}

/// Borrows the sorted outlier indices. The array lives as long as `r`.
///
/// # Safety
/// `r` must be a live result; `data` and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mer_result_outliers(
    r: *const MerResult,
    data: *mut *const usize,
    len: *mut usize,
) -> MerStatus {
    guard(|| {
        let r = deref(r, "result")?;
        if data.is_null() || len.is_null() {
            return Err(null("out"));
        }
        *data = r.report.outlier_indices.as_ptr();
        *len = r.report.outlier_indices.len();
        Ok(())
    })
}

/// The result document as JSON. Free the string with [`mer_string_free`].
///
/// # Safety
/// `r` must be a live result; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mer_result_to_json(r: *const MerResult, with_timings: bool, out: *mut *mut c_char) -> MerStatus {
    guard(|| {
        let r = deref(r, "result")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = ResultDocument::from_report(&r.report, r.n, with_timings).to_json();
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mer_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copies the last error message, for callers that prefer owned strings.
pub fn last_error() -> Option<String> {
    let p = mer_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}
