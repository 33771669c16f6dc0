//! C ABI over `dimerlab`.
//!
//! Every entry point returns a [`DlStatus`] and writes its result through an
//! out-pointer. On failure the message is kept per thread and can be read
//! with [`dl_last_error_message`]. Graphs and strip models are opaque
//! handles owned by the caller and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dimerlab::strip::{self, Boundary, StripModel};
use dimerlab::{series, tutte, Error, SmallGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Disconnected = 3,
    TooLarge = 4,
    /// The exact result does not fit in 64 bits.
    Overflow = 5,
    NoConvergence = 6,
    BufferTooSmall = 7,
    Unsupported = 8,
    Panic = 9,
}

/// Opaque multigraph handle.
pub struct DlGraph {
    inner: SmallGraph,
}

/// Opaque strip transfer-operator handle.
pub struct DlStrip {
    inner: StripModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> DlStatus {
    match e {
        Error::Disconnected => DlStatus::Disconnected,
        Error::TooLarge { .. } => DlStatus::TooLarge,
        Error::NoConvergence { .. } | Error::Bracket(_) => DlStatus::NoConvergence,
        Error::Unsupported(_) => DlStatus::Unsupported,
        _ => DlStatus::InvalidArgument,
    }
}

fn fail(status: DlStatus, msg: impl Into<String>) -> DlStatus {
    set_error(msg);
    status
}

fn guard<F: FnOnce() -> Result<(), DlStatus>>(f: F) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DlStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(DlStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: dimerlab::Result<T>) -> Result<T, DlStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, DlStatus> {
    p.as_mut()
        .ok_or_else(|| fail(DlStatus::NullPointer, "null output pointer"))
}

unsafe fn graph<'a>(g: *const DlGraph) -> Result<&'a SmallGraph, DlStatus> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| fail(DlStatus::NullPointer, "null graph handle"))
}

fn to_i64(v: &BigInt) -> Result<i64, DlStatus> {
    v.to_i64()
        .ok_or_else(|| fail(DlStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

fn boundary(periodic: bool) -> Boundary {
    if periodic {
        Boundary::Periodic
    } else {
        Boundary::Free
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a graph on `n` vertices from `m` edges given as `2 * m` endpoint
/// indices. Loops and parallel edges are allowed.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (it may be null when
/// `m == 0`) and `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_graph_new(
    n: usize,
    edges: *const u32,
    m: usize,
    out_graph: *mut *mut DlGraph,
) -> DlStatus {
    guard(|| {
        let slot = out(out_graph)?;
        *slot = ptr::null_mut();
        if edges.is_null() && m > 0 {
            return Err(fail(DlStatus::NullPointer, "null edge array"));
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs = flat
            .chunks_exact(2)
            .map(|c| (c[0] as usize, c[1] as usize))
            .collect();
        let g = lift(SmallGraph::new(n, pairs))?;
        *slot = Box::into_raw(Box::new(DlGraph { inner: g }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`dl_graph_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dl_graph_free(g: *mut DlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out_connected` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_graph_is_connected(
    g: *const DlGraph,
    out_connected: *mut bool,
) -> DlStatus {
    guard(|| {
        let g = graph(g)?;
        *out(out_connected)? = g.is_connected();
        Ok(())
    })
}

/// T_G(1, 0) by the subset recursion.
///
/// # Safety
/// `g` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_tutte_10(g: *const DlGraph, out_value: *mut i64) -> DlStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_value)?;
        *slot = to_i64(&lift(tutte::tutte_10_bhkk(g))?)?;
        Ok(())
    })
}

/// Ursell coefficient by the subset recursion.
///
/// # Safety
/// `g` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_ursell(g: *const DlGraph, out_value: *mut i64) -> DlStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_value)?;
        *slot = to_i64(&lift(tutte::ursell(g))?)?;
        Ok(())
    })
}

/// Ursell coefficient by edge-subset enumeration (at most 24 edges).
///
/// # Safety
/// `g` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_ursell_brute(g: *const DlGraph, out_value: *mut i64) -> DlStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_value)?;
        *slot = to_i64(&lift(tutte::ursell_brute(g))?)?;
        Ok(())
    })
}

/// Ursell coefficient as a NUL-terminated decimal string. `out_needed`
/// receives the required buffer size including the terminator; when `buf`
/// is too small nothing is written and `BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `g` must be a live handle, `buf` must hold `len` bytes (or be null with
/// `len == 0`) and `out_needed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_ursell_string(
    g: *const DlGraph,
    buf: *mut c_char,
    len: usize,
    out_needed: *mut usize,
) -> DlStatus {
    guard(|| {
        let g = graph(g)?;
        let needed = out(out_needed)?;
        let text = lift(tutte::ursell(g))?.to_string();
        *needed = text.len() + 1;
        if buf.is_null() || len < text.len() + 1 {
            return Err(fail(
                DlStatus::BufferTooSmall,
                format!("need {} bytes", text.len() + 1),
            ));
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        *buf.add(text.len()) = 0;
        Ok(())
    })
}

/// T_G(x, y) at rational `x = x_num / x_den`, `y = y_num / y_den`, returned
/// as a reduced fraction with positive denominator.
///
/// # Safety
/// `g` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn dl_tutte_eval(
    g: *const DlGraph,
    x_num: i64,
    x_den: i64,
    y_num: i64,
    y_den: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> DlStatus {
    guard(|| {
        let g = graph(g)?;
        let num = out(out_num)?;
        let den = out(out_den)?;
        if x_den == 0 || y_den == 0 {
            return Err(fail(DlStatus::InvalidArgument, "zero denominator"));
        }
        let x = BigRational::new(x_num.into(), x_den.into());
        let y = BigRational::new(y_num.into(), y_den.into());
        let v = tutte::tutte_eval_delcon(g, &x, &y);
        let (n, d) = (to_i64(v.numer())?, to_i64(v.denom())?);
        *num = n;
        *den = d;
        Ok(())
    })
}

/// Exact series coefficient a_k(d) as a reduced fraction.
///
/// # Safety
/// Both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_coeff_a(
    k: usize,
    d: u32,
    out_num: *mut i64,
    out_den: *mut i64,
) -> DlStatus {
    guard(|| {
        let num = out(out_num)?;
        let den = out(out_den)?;
        let a = lift(series::coeff_a(k, d))?;
        let (n, dd) = if a.is_zero() {
            (0, 1)
        } else {
            (to_i64(a.numer())?, to_i64(a.denom())?)
        };
        *num = n;
        *den = dd;
        Ok(())
    })
}

/// Series value of lambda_d(p) truncated at `order`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_eval_lambda(
    p: f64,
    d: u32,
    order: usize,
    out_value: *mut f64,
) -> DlStatus {
    guard(|| {
        let slot = out(out_value)?;
        *slot = lift(series::eval_lambda(p, d, order))?;
        Ok(())
    })
}

/// Exact one-dimensional lambda_1(p).
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_d1_closed_form(p: f64, out_value: *mut f64) -> DlStatus {
    guard(|| {
        let slot = out(out_value)?;
        *slot = lift(series::d1_closed_form(p))?;
        Ok(())
    })
}

/// Close-packed series at p = 1.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_eval_dimer_series(d: u32, out_value: *mut f64) -> DlStatus {
    guard(|| {
        let slot = out(out_value)?;
        *slot = lift(series::eval_dimer_series(d))?;
        Ok(())
    })
}

/// Strip of the given width at dimer activity `activity`.
///
/// # Safety
/// `out_strip` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_strip_new(
    width: usize,
    periodic: bool,
    activity: f64,
    out_strip: *mut *mut DlStrip,
) -> DlStatus {
    guard(|| {
        let slot = out(out_strip)?;
        *slot = ptr::null_mut();
        let m = lift(StripModel::new(width, boundary(periodic), activity))?;
        *slot = Box::into_raw(Box::new(DlStrip { inner: m }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`dl_strip_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dl_strip_free(s: *mut DlStrip) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Free energy per site, ln(eigenvalue) / width.
///
/// # Safety
/// `s` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_strip_free_energy(s: *const DlStrip, out_value: *mut f64) -> DlStatus {
    guard(|| {
        let s = s
            .as_ref()
            .ok_or_else(|| fail(DlStatus::NullPointer, "null strip handle"))?;
        let slot = out(out_value)?;
        *slot = lift(strip::free_energy(&s.inner))?;
        Ok(())
    })
}

/// Dimer density of covered sites.
///
/// # Safety
/// `s` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_strip_density(s: *const DlStrip, out_value: *mut f64) -> DlStatus {
    guard(|| {
        let s = s
            .as_ref()
            .ok_or_else(|| fail(DlStatus::NullPointer, "null strip handle"))?;
        let slot = out(out_value)?;
        *slot = lift(strip::density(&s.inner))?;
        Ok(())
    })
}

/// Strip estimate of lambda_2(p) at a single width.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_strip_lambda(
    p: f64,
    width: usize,
    periodic: bool,
    out_value: *mut f64,
) -> DlStatus {
    guard(|| {
        let slot = out(out_value)?;
        *slot = lift(strip::lambda_strip(p, width, boundary(periodic)))?;
        Ok(())
    })
}
