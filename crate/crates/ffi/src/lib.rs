//! C ABI for `eicp`.
//!
//! Objects are opaque handles created by `*_new`/compute functions and
//! released with the matching `*_free`. Every fallible function returns an
//! [`EicpStatus`]; on failure a message is kept per thread and can be copied
//! out with [`eicp_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eicp::report::InstanceFile;
use eicp::{
    enumerate_spectrum, gamma_interval, hull_bounds_k1, hull_bounds_k2, k1_cop_set, k1_set,
    k2_set, multi_row_roots, shift_pair, suggest_shift, EnumOptions, Error, Interval,
    IntervalUnion, MatrixPair, RealSymMatrix, Spectrum,
};

/// Result codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EicpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Hypothesis = 4,
    DimensionTooLarge = 5,
    ParamOutOfRange = 6,
    NotPositiveDefinite = 7,
    Numerical = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// A certified matrix pair `(A, B)`.
pub struct EicpPair(MatrixPair);

/// A normalized union of closed intervals.
pub struct EicpIntervalUnion(IntervalUnion);

/// Enumerated complementarity spectrum.
pub struct EicpSpectrum {
    n: usize,
    inner: Spectrum,
}

/// Matrix class certificates of a pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EicpCertificates {
    pub a_sdd: bool,
    pub a_pd: bool,
    pub a_copositive: bool,
    pub b_sdd: bool,
    pub b_pd: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> EicpStatus {
    match err {
        Error::Parse(_) | Error::Io(_) => EicpStatus::Parse,
        Error::HypothesisViolation(_) => EicpStatus::Hypothesis,
        Error::DimensionTooLarge { .. } => EicpStatus::DimensionTooLarge,
        Error::ParamOutOfRange(_) | Error::NegativeShift(_) => EicpStatus::ParamOutOfRange,
        Error::NotPositiveDefinite { .. } => EicpStatus::NotPositiveDefinite,
        Error::NonConvergence { .. }
        | Error::NegativeDiscriminant(_)
        | Error::NotConvex(_)
        | Error::NoRealRoot { .. } => EicpStatus::Numerical,
        _ => EicpStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (EicpStatus, String)>) -> EicpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            EicpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EicpStatus::Panic
        }
    }
}

type FfiResult<T> = Result<T, (EicpStatus, String)>;

fn lib<T>(r: eicp::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (EicpStatus, String) {
    (EicpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(p: *mut T, v: T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

unsafe fn matrix(n: usize, data: *const f64, what: &str) -> FfiResult<RealSymMatrix> {
    if data.is_null() {
        return Err(null(what));
    }
    let len = n.checked_mul(n).ok_or_else(|| {
        (EicpStatus::InvalidArgument, format!("dimension {n} overflows"))
    })?;
    let entries = std::slice::from_raw_parts(data, len).to_vec();
    lib(RealSymMatrix::new(n, entries))
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length in bytes
/// excluding the terminator. Passing a null `buf` only queries the length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn eicp_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn eicp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a pair from row-major `n × n` arrays. `b` may be null for the
/// identity.
///
/// # Safety
/// `a` (and `b` when non-null) must point to `n * n` doubles; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_pair_new(
    n: usize,
    a: *const f64,
    b: *const f64,
    out: *mut *mut EicpPair,
) -> EicpStatus {
    guard(|| {
        if n == 0 {
            return Err((EicpStatus::InvalidArgument, "n must be positive".into()));
        }
        let a = matrix(n, a, "a")?;
        let b = if b.is_null() {
            RealSymMatrix::identity(n)
        } else {
            matrix(n, b, "b")?
        };
        let pair = lib(MatrixPair::new(a, b))?;
        write(out, Box::into_raw(Box::new(EicpPair(pair))), "out")
    })
}

/// Builds a pair from an instance document (`{"n": .., "A": .., "B": ..}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_pair_from_json(json: *const c_char, out: *mut *mut EicpPair) -> EicpStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (EicpStatus::Parse, e.to_string()))?;
        let pair = lib(InstanceFile::parse(text).and_then(|f| f.to_pair()))?;
        write(out, Box::into_raw(Box::new(EicpPair(pair))), "out")
    })
}

/// # Safety
/// `pair` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eicp_pair_free(pair: *mut EicpPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Dimension of the pair, or 0 for a null handle.
///
/// # Safety
/// `pair` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eicp_pair_dim(pair: *const EicpPair) -> usize {
    pair.as_ref().map_or(0, |p| p.0.n())
}

/// # Safety
/// `pair` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_pair_certificates(
    pair: *const EicpPair,
    out: *mut EicpCertificates,
) -> EicpStatus {
    guard(|| {
        let p = &deref(pair, "pair")?.0;
        let (a, b) = (p.cert_a(), p.cert_b());
        let c = EicpCertificates {
            a_sdd: a.is_sdd,
            a_pd: a.is_pd,
            a_copositive: a.is_copositive(),
            b_sdd: b.is_sdd,
            b_pd: b.is_pd,
        };
        write(out, c, "out")
    })
}

/// Smallest shift `μ ≥ 0` that makes `A + μB` positive definite, plus a
/// small margin.
///
/// # Safety
/// `pair` must be a live handle; `mu` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_suggest_shift(pair: *const EicpPair, mu: *mut f64) -> EicpStatus {
    guard(|| {
        let v = lib(suggest_shift(&deref(pair, "pair")?.0))?;
        write(mu, v, "mu")
    })
}

/// New pair `(A + μB, B)`.
///
/// # Safety
/// `pair` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_pair_shift(
    pair: *const EicpPair,
    mu: f64,
    out: *mut *mut EicpPair,
) -> EicpStatus {
    guard(|| {
        let shifted = lib(shift_pair(&deref(pair, "pair")?.0, mu))?;
        write(out, Box::into_raw(Box::new(EicpPair(shifted))), "out")
    })
}

unsafe fn set_out(
    pair: *const EicpPair,
    out: *mut *mut EicpIntervalUnion,
    f: fn(&MatrixPair) -> eicp::Result<IntervalUnion>,
) -> EicpStatus {
    guard(|| {
        let u = lib(f(&deref(pair, "pair")?.0))?;
        write(out, Box::into_raw(Box::new(EicpIntervalUnion(u))), "out")
    })
}

/// One-row set `K1`.
///
/// # Safety
/// `pair` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_k1_set(pair: *const EicpPair, out: *mut *mut EicpIntervalUnion) -> EicpStatus {
    set_out(pair, out, k1_set)
}

/// One-row set `K1'` for copositive `A`.
///
/// # Safety
/// `pair` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_k1_cop_set(pair: *const EicpPair, out: *mut *mut EicpIntervalUnion) -> EicpStatus {
    set_out(pair, out, k1_cop_set)
}

/// Two-row set `K2` for copositive `A`.
///
/// # Safety
/// `pair` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_k2_set(pair: *const EicpPair, out: *mut *mut EicpIntervalUnion) -> EicpStatus {
    set_out(pair, out, k2_set)
}

/// # Safety
/// `u` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eicp_union_free(u: *mut EicpIntervalUnion) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Number of disjoint intervals, or 0 for a null handle.
///
/// # Safety
/// `u` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eicp_union_len(u: *const EicpIntervalUnion) -> usize {
    u.as_ref().map_or(0, |u| u.0.len())
}

/// # Safety
/// `u` must be a live handle; `lo`, `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_union_get(
    u: *const EicpIntervalUnion,
    index: usize,
    lo: *mut f64,
    hi: *mut f64,
) -> EicpStatus {
    guard(|| {
        let u = &deref(u, "union")?.0;
        let iv = u.intervals().get(index).ok_or_else(|| {
            (EicpStatus::OutOfRange, format!("index {index} out of range for {} intervals", u.len()))
        })?;
        write(lo, iv.lo(), "lo")?;
        write(hi, iv.hi(), "hi")
    })
}

/// Whether `x` lies in the union within `tol`. False for a null handle.
///
/// # Safety
/// `u` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eicp_union_contains(u: *const EicpIntervalUnion, x: f64, tol: f64) -> bool {
    u.as_ref().is_some_and(|u| u.0.contains(x, tol))
}

unsafe fn interval_out(
    pair: *const EicpPair,
    lo: *mut f64,
    hi: *mut f64,
    f: fn(&MatrixPair) -> eicp::Result<Interval>,
) -> EicpStatus {
    guard(|| {
        let iv = lib(f(&deref(pair, "pair")?.0))?;
        write(lo, iv.lo(), "lo")?;
        write(hi, iv.hi(), "hi")
    })
}

/// Closed-form hull of `K1`.
///
/// # Safety
/// `pair` must be a live handle; `lo`, `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_hull_k1(pair: *const EicpPair, lo: *mut f64, hi: *mut f64) -> EicpStatus {
    interval_out(pair, lo, hi, hull_bounds_k1)
}

/// Closed-form hull of `K2`.
///
/// # Safety
/// `pair` must be a live handle; `lo`, `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_hull_k2(pair: *const EicpPair, lo: *mut f64, hi: *mut f64) -> EicpStatus {
    interval_out(pair, lo, hi, hull_bounds_k2)
}

/// Smallest and largest generalized eigenvalue of `(A, B)`.
///
/// # Safety
/// `pair` must be a live handle; `lo`, `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_gamma(pair: *const EicpPair, lo: *mut f64, hi: *mut f64) -> EicpStatus {
    interval_out(pair, lo, hi, gamma_interval)
}

/// Smallest root of `P_low_S` and largest root of `P_up_S` for the
/// zero-based row set `rows[0..len]`. For `len ≥ 3` the result is not a
/// localization bound.
///
/// # Safety
/// `pair` must be a live handle; `rows` must point to `len` indices; `lo`,
/// `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_multi_row_roots(
    pair: *const EicpPair,
    rows: *const usize,
    len: usize,
    lo: *mut f64,
    hi: *mut f64,
) -> EicpStatus {
    guard(|| {
        let p = &deref(pair, "pair")?.0;
        if rows.is_null() && len > 0 {
            return Err(null("rows"));
        }
        let s = if len == 0 { &[][..] } else { std::slice::from_raw_parts(rows, len) };
        let (l, h) = lib(multi_row_roots(p, s))?;
        write(lo, l, "lo")?;
        write(hi, h, "hi")
    })
}

/// Enumerates the complementarity spectrum. `n_max == 0` and
/// `feas_tol <= 0` select the defaults.
///
/// # Safety
/// `pair` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_spectrum_enumerate(
    pair: *const EicpPair,
    n_max: usize,
    feas_tol: f64,
    out: *mut *mut EicpSpectrum,
) -> EicpStatus {
    guard(|| {
        let p = &deref(pair, "pair")?.0;
        let mut opts = EnumOptions::default();
        if n_max > 0 {
            opts.n_max = n_max;
        }
        if feas_tol > 0.0 {
            opts.feas_tol = Some(feas_tol);
        }
        let inner = lib(enumerate_spectrum(p, &opts))?;
        let s = EicpSpectrum { n: p.n(), inner };
        write(out, Box::into_raw(Box::new(s)), "out")
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eicp_spectrum_free(s: *mut EicpSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of accepted eigenpairs (one per support), or 0 for null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eicp_spectrum_len(s: *const EicpSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.inner.solutions.len())
}

/// Copies the distinct eigenvalues (ascending) into `values[0..cap]` and
/// returns how many there are.
///
/// # Safety
/// `s` must be null or a live handle; `values` must be null or valid for
/// `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn eicp_spectrum_values(s: *const EicpSpectrum, values: *mut f64, cap: usize) -> usize {
    let Some(s) = s.as_ref() else { return 0 };
    let v = &s.inner.values;
    if !values.is_null() {
        ptr::copy_nonoverlapping(v.as_ptr(), values, v.len().min(cap));
    }
    v.len()
}

/// Eigenpair `index`: writes `λ` and, when `x` is non-null, the `n`
/// components of the normalized eigenvector.
///
/// # Safety
/// `s` must be a live handle; `lambda` must be valid for writes; `x` must be
/// null or valid for `n` writes where `n` is the pair dimension.
#[no_mangle]
pub unsafe extern "C" fn eicp_spectrum_get(
    s: *const EicpSpectrum,
    index: usize,
    lambda: *mut f64,
    x: *mut f64,
) -> EicpStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        let sol = s.inner.solutions.get(index).ok_or_else(|| {
            (
                EicpStatus::OutOfRange,
                format!("index {index} out of range for {} solutions", s.inner.solutions.len()),
            )
        })?;
        write(lambda, sol.lambda, "lambda")?;
        if !x.is_null() {
            ptr::copy_nonoverlapping(sol.x.as_ptr(), x, s.n);
        }
        Ok(())
    })
}
