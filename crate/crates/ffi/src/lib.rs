//! C ABI over the `backstep` library.
//!
//! Every function returns a [`BsStatus`]; results come back through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`bs_last_error_message`]. Handles are opaque and must be released with
//! their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use backstep::analysis::{check_controller_condition, check_observer2_condition, ConditionReport};
use backstep::cli::RunConfig;
use backstep::kernels::{self, KernelTable, Orientation};
use backstep::model::{eigenvalue_analytic, Grid, SystemParams};
use backstep::sim::{simulate, TimeSeries};
use backstep::{specfun, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Resonance = 4,
    Numerical = 5,
    Io = 6,
    Config = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsKernelKind {
    Ka = 0,
    La = 1,
    Kb = 2,
    Lb = 3,
    NumericLower = 4,
    NumericUpper = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsParams {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsCondition {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
}

impl From<ConditionReport> for BsCondition {
    fn from(c: ConditionReport) -> Self {
        Self {
            lhs: c.lhs,
            rhs: c.rhs,
            margin: c.margin,
            satisfied: c.satisfied,
        }
    }
}

/// Validated run configuration.
pub struct BsConfig(RunConfig);

/// Recorded trajectory.
pub struct BsSeries(TimeSeries);

/// Kernel samples on the grid triangle.
pub struct BsKernelTable(KernelTable);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into_bytes());
}

struct Failure(BsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidParameter { .. } | Error::GridMismatch { .. } | Error::Orientation(_) => {
                BsStatus::InvalidArgument
            }
            Error::KernelDomain { .. } => BsStatus::Domain,
            Error::Resonance { .. } | Error::SingularElliptic { .. } => BsStatus::Resonance,
            Error::Io { .. } => BsStatus::Io,
            Error::Config(_) | Error::Json(_) => BsStatus::Config,
            _ => BsStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BsStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BsStatus::Panic
        }
    }
}

/// Writes `v` through `out` after a null check.
unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BsStatus::InvalidArgument, format!("`{what}` is not UTF-8")))
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, len: usize) -> Result<(), Failure> {
    if buf.is_null() {
        return Err(null("buf"));
    }
    if len < values.len() {
        return Err(Failure(
            BsStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

fn params(p: &BsParams) -> Result<SystemParams, Failure> {
    Ok(SystemParams::new(p.rho, p.alpha, p.beta, p.gamma)?)
}

/// Length in bytes of the last error message on this thread, without the NUL.
#[no_mangle]
pub extern "C" fn bs_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().len())
}

/// Copies the last error message (NUL-terminated, truncated to fit) into
/// `buf` and returns the full message length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn bs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Modified Bessel function `I_order(x)`, `order` in {0, 1, 2}.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_bessel_i(order: u32, x: f64, out: *mut f64) -> BsStatus {
    guard(|| put(out, specfun::bessel_i(order, x)?))
}

/// Bessel function `J_1(x)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_bessel_j1(x: f64, out: *mut f64) -> BsStatus {
    guard(|| put(out, specfun::bessel_j1(x)?))
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_erf(x: f64, out: *mut f64) -> BsStatus {
    guard(|| put(out, specfun::erf(x)?))
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_erfi(x: f64, out: *mut f64) -> BsStatus {
    guard(|| put(out, specfun::erfi(x)?))
}

/// Closed-form kernel value at `(x, y)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_kernel_value(
    kind: BsKernelKind,
    x: f64,
    y: f64,
    gain: f64,
    out: *mut f64,
) -> BsStatus {
    guard(|| {
        let v = match kind {
            BsKernelKind::Ka => kernels::kernel_ka(x, y, gain)?,
            BsKernelKind::La => kernels::kernel_la(x, y, gain)?,
            BsKernelKind::Kb => kernels::kernel_kb(x, y, gain)?,
            BsKernelKind::Lb => kernels::kernel_lb(x, y, gain)?,
            _ => {
                return Err(Failure(
                    BsStatus::InvalidArgument,
                    "numeric kernels exist only as tables".into(),
                ))
            }
        };
        put(out, v)
    })
}

/// Closed-form bounds on `||k^a||` and `||k^a_x(1, .)||`.
///
/// # Safety
/// Out pointers must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_kernel_norm_bounds(gain: f64, ka: *mut f64, kax1: *mut f64) -> BsStatus {
    guard(|| {
        let a = kernels::bound_norm_ka(gain)?;
        let b = kernels::bound_norm_kax1(gain)?;
        put(ka, a)?;
        put(kax1, b)
    })
}

/// Eigenvalue `n` of the uncontrolled system.
///
/// # Safety
/// `p` must be null or point to a valid `BsParams`; `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_eigenvalue(p: *const BsParams, n: usize, out: *mut f64) -> BsStatus {
    guard(|| {
        let p = params(p.as_ref().ok_or_else(|| null("params"))?)?;
        put(out, eigenvalue_analytic(n, &p)?)
    })
}

/// Controller gain condition with closed-form norm bounds.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_check_controller(
    c2: f64,
    p: *const BsParams,
    out: *mut BsCondition,
) -> BsStatus {
    guard(|| {
        let p = params(p.as_ref().ok_or_else(|| null("params"))?)?;
        put(out, check_controller_condition(c2, &p)?.into())
    })
}

/// Two-measurement observer condition.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_check_observer2(
    o2: f64,
    p: *const BsParams,
    out: *mut BsCondition,
) -> BsStatus {
    guard(|| {
        let p = params(p.as_ref().ok_or_else(|| null("params"))?)?;
        put(out, check_observer2_condition(o2, &p)?.into())
    })
}

/// Parses and validates a JSON run configuration.
///
/// # Safety
/// `json` must be null or a NUL-terminated string; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_config_from_json(json: *const c_char, out: *mut *mut BsConfig) -> BsStatus {
    guard(|| {
        let text = cstr(json, "json")?;
        let cfg = RunConfig::from_json(text)?;
        put(out, Box::into_raw(Box::new(BsConfig(cfg))))
    })
}

/// Loads a JSON run configuration from a file.
///
/// # Safety
/// `path` must be null or a NUL-terminated string; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_config_load(path: *const c_char, out: *mut *mut BsConfig) -> BsStatus {
    guard(|| {
        let path = cstr(path, "path")?;
        let cfg = backstep::cli::load_config(path)?;
        put(out, Box::into_raw(Box::new(BsConfig(cfg))))
    })
}

/// # Safety
/// `cfg` must be null or a handle from `bs_config_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_config_free(cfg: *mut BsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Runs the configured scenario.
///
/// # Safety
/// `cfg` must be null or a live config handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_simulate(cfg: *const BsConfig, out: *mut *mut BsSeries) -> BsStatus {
    guard(|| {
        let cfg = &cfg.as_ref().ok_or_else(|| null("config"))?.0;
        let series = simulate(&cfg.scenario, &cfg.params, &cfg.grid()?, &cfg.sim)?;
        put(out, Box::into_raw(Box::new(BsSeries(series))))
    })
}

/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn bs_series_free(s: *mut BsSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of stored records and grid nodes.
///
/// # Safety
/// `s` must be null or a live series handle; out pointers null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_series_shape(
    s: *const BsSeries,
    records: *mut usize,
    nodes: *mut usize,
) -> BsStatus {
    guard(|| {
        let s = &s.as_ref().ok_or_else(|| null("series"))?.0;
        put(records, s.len())?;
        put(nodes, s.grid.len())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsSeriesColumn {
    Time = 0,
    NormW = 1,
    NormV = 2,
    NormEw = 3,
    NormEv = 4,
    Control = 5,
}

/// Copies one per-record column into `buf` (length at least the record
/// count). Observer and control columns fail with `InvalidArgument` when the
/// scenario has none.
///
/// # Safety
/// `s` must be null or a live series handle; `buf` null or valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bs_series_column(
    s: *const BsSeries,
    column: BsSeriesColumn,
    buf: *mut f64,
    len: usize,
) -> BsStatus {
    guard(|| {
        let s = &s.as_ref().ok_or_else(|| null("series"))?.0;
        let values = match column {
            BsSeriesColumn::Time => s.times(),
            BsSeriesColumn::NormW => s.norm_w(),
            BsSeriesColumn::NormV => s.norm_v(),
            BsSeriesColumn::NormEw => s.norm_ew(),
            BsSeriesColumn::NormEv => s.norm_ev(),
            BsSeriesColumn::Control => s.controls(),
        };
        if values.len() != s.len() {
            return Err(Failure(
                BsStatus::InvalidArgument,
                "column not recorded for this scenario".into(),
            ));
        }
        copy_out(&values, buf, len)
    })
}

/// Copies `w` and `v` of record `index` (each of length at least the node count).
///
/// # Safety
/// `s` must be null or a live series handle; `w`, `v` null or valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bs_series_state(
    s: *const BsSeries,
    index: usize,
    w: *mut f64,
    v: *mut f64,
    len: usize,
) -> BsStatus {
    guard(|| {
        let s = &s.as_ref().ok_or_else(|| null("series"))?.0;
        let rec = s.samples.get(index).ok_or_else(|| {
            Failure(
                BsStatus::InvalidArgument,
                format!("record {index} out of range ({} stored)", s.len()),
            )
        })?;
        copy_out(&rec.w, w, len)?;
        copy_out(&rec.v, v, len)
    })
}

/// Builds a kernel table on a uniform grid with `n_intervals` intervals.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bs_kernel_table_new(
    kind: BsKernelKind,
    gain: f64,
    n_intervals: usize,
    out: *mut *mut BsKernelTable,
) -> BsStatus {
    guard(|| {
        let grid = Grid::new(n_intervals)?;
        let t = match kind {
            BsKernelKind::Ka => KernelTable::ka(gain, &grid)?,
            BsKernelKind::La => KernelTable::la(gain, &grid)?,
            BsKernelKind::Kb => KernelTable::kb(gain, &grid)?,
            BsKernelKind::Lb => KernelTable::lb(gain, &grid)?,
            BsKernelKind::NumericLower => kernels::solve_kernel_numeric(gain, &grid, Orientation::Lower)?,
            BsKernelKind::NumericUpper => kernels::solve_kernel_numeric(gain, &grid, Orientation::Upper)?,
        };
        put(out, Box::into_raw(Box::new(BsKernelTable(t))))
    })
}

/// Value at nodes `(i, j)`; fails outside the table's triangle.
///
/// # Safety
/// `t` must be null or a live table handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_kernel_table_get(
    t: *const BsKernelTable,
    i: usize,
    j: usize,
    out: *mut f64,
) -> BsStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("table"))?.0;
        let v = t.get(i, j).ok_or_else(|| {
            Failure(BsStatus::InvalidArgument, format!("({i}, {j}) is outside the kernel triangle"))
        })?;
        put(out, v)
    })
}

/// Trapezoid `L2` norm over the triangle.
///
/// # Safety
/// `t` must be null or a live table handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn bs_kernel_table_l2_norm(t: *const BsKernelTable, out: *mut f64) -> BsStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("table"))?.0;
        put(out, t.l2_norm())
    })
}

/// # Safety
/// `t` must be null or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn bs_kernel_table_free(t: *mut BsKernelTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
