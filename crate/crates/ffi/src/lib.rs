//! C interface to `hermite_bary`.
//!
//! Objects are opaque handles created by `hb_*_new` and released by the
//! matching `hb_*_free`. Every fallible call returns an [`HbStatus`]; on
//! failure a description is available from [`hb_last_error_message`] on the
//! same thread. Output buffers are caller-allocated, and their length is
//! passed alongside and checked.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hermite_bary::{
    bary_weights, common_factor, Algorithm, BaryWeightTable, Error, Grid, GridKind, HermiteData,
    Interpolant, JacobiParams, Scaling,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// buffer length does not match the object
    Shape = 3,
    NoConvergence = 4,
    /// a value left double-precision range
    Range = 5,
    /// numerical contract violated during evaluation
    Contract = 6,
    /// internal panic, caught at the boundary
    Panic = 7,
}

pub const HB_GAUSS_JACOBI: i32 = 0;
pub const HB_GAUSS_LOBATTO: i32 = 1;

pub const HB_SCALING_SIMPLIFIED: i32 = 0;
pub const HB_SCALING_FULL: i32 = 1;

pub const HB_ALGORITHM_ONE: i32 = 1;
pub const HB_ALGORITHM_TWO: i32 = 2;

/// Nodes and quadrature weights of a point system.
pub struct HbGrid {
    inner: Grid,
}

/// Barycentric weight table, `n` rows of `m` entries.
pub struct HbWeights {
    inner: BaryWeightTable,
}

/// Second-form interpolant ready for evaluation.
pub struct HbInterpolant {
    inner: Interpolant,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(HbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidParams { .. }
            | Error::InvalidArgument(_)
            | Error::Domain { .. }
            | Error::DuplicateNode(_)
            | Error::DivisionByZero => HbStatus::InvalidArgument,
            Error::Shape(_) => HbStatus::Shape,
            Error::NoConvergence { .. } => HbStatus::NoConvergence,
            Error::Range(_) => HbStatus::Range,
            Error::Contract(_) => HbStatus::Contract,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: HbStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

/// Runs `body`, turning errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal panic: {msg}"));
            HbStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().map_or_else(
        || fail(HbStatus::NullPointer, format!("{what} is null")),
        Ok,
    )
}

unsafe fn in_slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return fail(HbStatus::NullPointer, format!("{what} is null"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_slice<'a, T>(
    p: *mut T,
    len: usize,
    expected: usize,
    what: &str,
) -> Result<&'a mut [T], Failure> {
    if len != expected {
        return fail(
            HbStatus::Shape,
            format!("{what} has length {len}, expected {expected}"),
        );
    }
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return fail(HbStatus::NullPointer, format!("{what} is null"));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(HbStatus::NullPointer, "output handle pointer is null");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a grid of `n` nodes. `kind` is `HB_GAUSS_JACOBI` or
/// `HB_GAUSS_LOBATTO`.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_grid_new(
    kind: i32,
    alpha: f64,
    beta: f64,
    n: usize,
    out: *mut *mut HbGrid,
) -> HbStatus {
    guard(|| {
        let kind = match kind {
            HB_GAUSS_JACOBI => GridKind::GaussJacobi,
            HB_GAUSS_LOBATTO => GridKind::JacobiGaussLobatto,
            _ => {
                return fail(
                    HbStatus::InvalidArgument,
                    format!("unknown grid kind {kind}"),
                )
            }
        };
        let grid = Grid::new(kind, JacobiParams::new(alpha, beta)?, n)?;
        store(out, HbGrid { inner: grid })
    })
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_grid_len(grid: *const HbGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.inner.len())
}

/// Copies the ascending nodes into `out[0..len]`; `len` must equal the node
/// count.
///
/// # Safety
/// `grid` must be a live handle and `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hb_grid_nodes(grid: *const HbGrid, out: *mut f64, len: usize) -> HbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        out_slice(out, len, g.len(), "node buffer")?.copy_from_slice(&g.nodes);
        Ok(())
    })
}

/// Copies the quadrature weights. For Lobatto grids the endpoint entries are
/// the fused endpoint weights used by the barycentric formula.
///
/// # Safety
/// `grid` must be a live handle and `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hb_grid_quadrature_weights(
    grid: *const HbGrid,
    out: *mut f64,
    len: usize,
) -> HbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        out_slice(out, len, g.len(), "weight buffer")?.copy_from_slice(&g.gauss_weights);
        Ok(())
    })
}

/// # Safety
/// `grid` must be null or a handle from [`hb_grid_new`] not freed before.
#[no_mangle]
pub unsafe extern "C" fn hb_grid_free(grid: *mut HbGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Weight table with `m` values per node.
///
/// # Safety
/// `grid` must be a live handle and `out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_weights_new(
    grid: *const HbGrid,
    m: usize,
    scaling: i32,
    algorithm: i32,
    out: *mut *mut HbWeights,
) -> HbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        let scaling = match scaling {
            HB_SCALING_SIMPLIFIED => Scaling::Simplified,
            HB_SCALING_FULL => Scaling::FullLogScaled,
            _ => {
                return fail(
                    HbStatus::InvalidArgument,
                    format!("unknown scaling {scaling}"),
                )
            }
        };
        let alg = match algorithm {
            HB_ALGORITHM_ONE => Algorithm::One,
            HB_ALGORITHM_TWO => Algorithm::Two,
            _ => {
                return fail(
                    HbStatus::InvalidArgument,
                    format!("unknown algorithm {algorithm}"),
                )
            }
        };
        store(
            out,
            HbWeights {
                inner: bary_weights(g, m, scaling, alg)?,
            },
        )
    })
}

/// Values per node, or 0 for a null handle.
///
/// # Safety
/// `weights` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_weights_m(weights: *const HbWeights) -> usize {
    weights.as_ref().map_or(0, |w| w.inner.m)
}

/// Copies a simplified table, row-major `n × m`. Fails with
/// `InvalidArgument` for a full table.
///
/// # Safety
/// `weights` must be a live handle and `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hb_weights_simplified(
    weights: *const HbWeights,
    out: *mut f64,
    len: usize,
) -> HbStatus {
    guard(|| {
        let t = &deref(weights, "weights")?.inner;
        let Some(v) = t.simplified() else {
            return fail(
                HbStatus::InvalidArgument,
                "table holds full weights; use hb_weights_scaled",
            );
        };
        out_slice(out, len, v.len(), "weight buffer")?.copy_from_slice(v);
        Ok(())
    })
}

/// Any table as sign (`-1`, `0`, `1`) and `log10 |w|`, row-major `n × m`.
///
/// # Safety
/// `weights` must be a live handle; `signs` and `log10_mags` must be valid
/// for `len` elements each.
#[no_mangle]
pub unsafe extern "C" fn hb_weights_scaled(
    weights: *const HbWeights,
    signs: *mut i8,
    log10_mags: *mut f64,
    len: usize,
) -> HbStatus {
    guard(|| {
        let t = &deref(weights, "weights")?.inner;
        let total = t.n * t.m;
        let signs = out_slice(signs, len, total, "sign buffer")?;
        let mags = out_slice(log10_mags, len, total, "magnitude buffer")?;
        for i in 0..total {
            let w = t.get_scaled(i / t.m, i % t.m);
            signs[i] = w.sign;
            mags[i] = w.log10_mag;
        }
        Ok(())
    })
}

/// # Safety
/// `weights` must be null or a handle from [`hb_weights_new`] not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn hb_weights_free(weights: *mut HbWeights) {
    if !weights.is_null() {
        drop(Box::from_raw(weights));
    }
}

/// Interpolant of row-major data `data[k*m + j] = f^(j)(x_k)`. Needs a
/// simplified table built on the same grid.
///
/// # Safety
/// `grid` and `weights` must be live handles; `data` valid for `len`
/// doubles; `out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_interpolant_new(
    grid: *const HbGrid,
    weights: *const HbWeights,
    data: *const f64,
    len: usize,
    out: *mut *mut HbInterpolant,
) -> HbStatus {
    guard(|| {
        let g = &deref(grid, "grid")?.inner;
        let t = &deref(weights, "weights")?.inner;
        let values = in_slice(data, len, "data")?.to_vec();
        let data = HermiteData::new(g.len(), t.m, values)?;
        store(
            out,
            HbInterpolant {
                inner: Interpolant::new(t, g, &data)?,
            },
        )
    })
}

/// Evaluates at `xs[0..len]` into `out[0..len]`.
///
/// # Safety
/// `interp` must be a live handle; `xs` and `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn hb_interpolant_eval(
    interp: *const HbInterpolant,
    xs: *const f64,
    out: *mut f64,
    len: usize,
) -> HbStatus {
    guard(|| {
        let p = &deref(interp, "interpolant")?.inner;
        let xs = in_slice(xs, len, "evaluation points")?;
        let out = out_slice(out, len, xs.len(), "output buffer")?;
        for (o, &x) in out.iter_mut().zip(xs) {
            *o = p.eval(x)?;
        }
        Ok(())
    })
}

/// # Safety
/// `interp` must be null or a handle from [`hb_interpolant_new`] not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn hb_interpolant_free(interp: *mut HbInterpolant) {
    if !interp.is_null() {
        drop(Box::from_raw(interp));
    }
}

/// Common factor of the Gauss–Jacobi weights at `n` nodes raised to `m`, as
/// sign and decimal log.
///
/// # Safety
/// `sign` and `log10_mag` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn hb_common_factor(
    alpha: f64,
    beta: f64,
    n: usize,
    m: usize,
    sign: *mut i8,
    log10_mag: *mut f64,
) -> HbStatus {
    guard(|| {
        if sign.is_null() || log10_mag.is_null() {
            return fail(HbStatus::NullPointer, "output pointer is null");
        }
        if n == 0 || m == 0 {
            return fail(HbStatus::InvalidArgument, "n and m must be at least 1");
        }
        let c = common_factor(JacobiParams::new(alpha, beta)?, n, m);
        *sign = c.sign;
        *log10_mag = c.log10_mag;
        Ok(())
    })
}
