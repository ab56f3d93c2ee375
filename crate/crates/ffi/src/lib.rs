//! C ABI for the `blochprop` library.
//!
//! Every fallible function returns a [`BpStatus`] and writes its result
//! through an out pointer. On failure, [`bp_last_error_message`] describes
//! the most recent error on the calling thread. Series are returned as
//! opaque [`BpSeries`] handles released with [`bp_series_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blochprop::analysis::{self, Mode};
use blochprop::bloch::{CartesianVector, EulerAngles};
use blochprop::propagation::{self, ClosedForm, ErrorAngles, ErrorSeries, Pipeline, Target};
use blochprop::rotations;
use blochprop::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NormViolation = 3,
    NotHermitian = 4,
    ZeroVector = 5,
    DegenerateRotation = 6,
    NonFinite = 7,
    OutsideGeneratorFamily = 8,
    PeriodNotFound = 9,
    OutOfRange = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpTarget {
    Azimuth = 0,
    Elevation = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpMode {
    Max = 0,
    Min = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpPipeline {
    Su2 = 0,
    Euler = 1,
    Closed = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BpVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Euler angles `(phi, theta, psi)`; also used for error angles
/// `(eps_x, eps_y, eps_z)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BpEuler {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

/// Row-major 3x3 matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BpMat3 {
    pub m: [f64; 9],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BpSample {
    pub t: f64,
    pub delta_az: f64,
    pub delta_el: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BpExtremum {
    pub value: f64,
    pub eps_x: f64,
    pub eps_y: f64,
    pub eps_z: f64,
    pub t: f64,
}

/// Opaque sampled discrepancy series.
pub struct BpSeries {
    inner: ErrorSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BpStatus {
    match e {
        Error::NormViolation { .. } => BpStatus::NormViolation,
        Error::NotHermitian { .. } => BpStatus::NotHermitian,
        Error::ZeroVector => BpStatus::ZeroVector,
        Error::DegenerateRotation => BpStatus::DegenerateRotation,
        Error::NonFinite(_) => BpStatus::NonFinite,
        Error::OutsideGeneratorFamily { .. } => BpStatus::OutsideGeneratorFamily,
        Error::PeriodNotFound { .. } => BpStatus::PeriodNotFound,
        Error::InvalidArgument(_) => BpStatus::InvalidArgument,
    }
}

struct Fail(BpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording any error or panic for [`bp_last_error_message`].
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            BpStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            BpStatus::Panic
        }
    }
}

fn null(name: &str) -> Fail {
    Fail(BpStatus::NullPointer, format!("`{name}` is null"))
}

/// Writes through `out` after a null check.
///
/// # Safety
/// `out` must be null or valid for writes of `T`.
unsafe fn write_out<T>(out: *mut T, name: &str, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

fn vec_of(v: BpVec3) -> CartesianVector {
    CartesianVector::new(v.x, v.y, v.z)
}

fn bp_vec(v: CartesianVector) -> BpVec3 {
    BpVec3 {
        x: v.x,
        y: v.y,
        z: v.z,
    }
}

fn angles_of(a: BpEuler) -> EulerAngles {
    EulerAngles::new(a.phi, a.theta, a.psi)
}

fn err_of(a: BpEuler) -> ErrorAngles {
    ErrorAngles::new(a.phi, a.theta, a.psi)
}

fn mat(m: [[f64; 3]; 3]) -> BpMat3 {
    let mut out = [0.0; 9];
    for (i, row) in m.iter().enumerate() {
        out[3 * i..3 * i + 3].copy_from_slice(row);
    }
    BpMat3 { m: out }
}

fn target_of(t: BpTarget) -> Target {
    match t {
        BpTarget::Azimuth => Target::Azimuth,
        BpTarget::Elevation => Target::Elevation,
    }
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn bp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Euler matrix `S(phi, theta, psi)` acting on row vectors.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_euler_matrix(angles: BpEuler, out: *mut BpMat3) -> BpStatus {
    guard(|| {
        let a = angles_of(angles);
        if !a.is_finite() {
            return Err(Error::NonFinite("rotation angles").into());
        }
        write_out(out, "out", mat(rotations::euler_matrix(a).0))
    })
}

/// `v . S(angles)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_rotate_euler(v: BpVec3, angles: BpEuler, out: *mut BpVec3) -> BpStatus {
    guard(|| {
        let v = vec_of(v);
        v.ensure_unit(blochprop::bloch::VALIDATION_TOL)?;
        let r = rotations::rotate_euler(v, &rotations::euler_matrix(angles_of(angles)));
        write_out(out, "out", bp_vec(r))
    })
}

/// Limit rotation `S_P(t)` at the given rates, acting on column vectors.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_sp_general(t: f64, angles: BpEuler, out: *mut BpMat3) -> BpStatus {
    guard(|| {
        let a = angles_of(angles);
        if !a.is_finite() || !t.is_finite() {
            return Err(Error::NonFinite("time or rotation angles").into());
        }
        write_out(out, "out", mat(propagation::sp_general(t, a).0))
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_period(angles: BpEuler, out: *mut f64) -> BpStatus {
    guard(|| write_out(out, "out", propagation::period(angles_of(angles))?))
}

/// Discrepancies at time `t` between `base` and its perturbed copy.
///
/// # Safety
/// `out_az` and `out_el` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_delta_closed_form(
    base: BpVec3,
    err: BpEuler,
    t: f64,
    angles: BpEuler,
    out_az: *mut f64,
    out_el: *mut f64,
) -> BpStatus {
    guard(|| {
        if out_az.is_null() || out_el.is_null() {
            return Err(null("out_az/out_el"));
        }
        if !t.is_finite() {
            return Err(Error::NonFinite("time").into());
        }
        let (az, el) = ClosedForm::new(vec_of(base), err_of(err), angles_of(angles))?.at(t);
        write_out(out_az, "out_az", az)?;
        write_out(out_el, "out_el", el)
    })
}

/// Steps `v` and `v . S(err)` `steps` times; the series has `steps + 1`
/// samples.
///
/// # Safety
/// `out` must be null or valid for writes. The handle written there must be
/// released with [`bp_series_free`].
#[no_mangle]
pub unsafe extern "C" fn bp_simulate(
    pipeline: BpPipeline,
    v: BpVec3,
    err: BpEuler,
    step: BpEuler,
    steps: usize,
    out: *mut *mut BpSeries,
) -> BpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let pipeline = match pipeline {
            BpPipeline::Su2 => Pipeline::Su2,
            BpPipeline::Euler => Pipeline::Euler,
            BpPipeline::Closed => Pipeline::ClosedForm,
        };
        let v = vec_of(v);
        v.ensure_unit(blochprop::bloch::VALIDATION_TOL)?;
        let series = propagation::simulate_with(
            pipeline,
            v,
            err_of(err).perturb(v),
            angles_of(step),
            steps,
        )?;
        out.write(Box::into_raw(Box::new(BpSeries { inner: series })));
        Ok(())
    })
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_series_len(series: *const BpSeries) -> usize {
    series.as_ref().map_or(0, |s| s.inner.len())
}

/// # Safety
/// `series` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_series_sample(
    series: *const BpSeries,
    index: usize,
    out: *mut BpSample,
) -> BpStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        let sample = s.inner.samples().get(index).ok_or_else(|| {
            Fail(
                BpStatus::OutOfRange,
                format!("index {index} out of range for {} samples", s.inner.len()),
            )
        })?;
        write_out(
            out,
            "out",
            BpSample {
                t: sample.t,
                delta_az: sample.delta_az,
                delta_el: sample.delta_el,
            },
        )
    })
}

/// Releases a handle from [`bp_simulate`]; null is ignored.
///
/// # Safety
/// `series` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bp_series_free(series: *mut BpSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Multi-start search over error angles and time in `[0, 2 pi)^4`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_find_extremum(
    target: BpTarget,
    mode: BpMode,
    base: BpVec3,
    angles: BpEuler,
    num_starts: usize,
    seed: u64,
    out: *mut BpExtremum,
) -> BpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mode = match mode {
            BpMode::Max => Mode::Max,
            BpMode::Min => Mode::Min,
        };
        let r = analysis::find_extremum(
            target_of(target),
            mode,
            vec_of(base),
            angles_of(angles),
            num_starts,
            seed,
        )?;
        write_out(
            out,
            "out",
            BpExtremum {
                value: r.value,
                eps_x: r.at.err.eps_x,
                eps_y: r.at.err.eps_y,
                eps_z: r.at.err.eps_z,
                t: r.at.t,
            },
        )
    })
}

/// Mean discrepancy over one period.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_time_averaged_error(
    target: BpTarget,
    base: BpVec3,
    err: BpEuler,
    angles: BpEuler,
    out: *mut f64,
) -> BpStatus {
    guard(|| {
        let model = ClosedForm::new(vec_of(base), err_of(err), angles_of(angles))?;
        let avg =
            analysis::time_averaged_error_with(&model, target_of(target), &Default::default())?;
        write_out(out, "out", avg.value)
    })
}

/// Numeric period of the discrepancy signal.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bp_estimate_period(
    target: BpTarget,
    base: BpVec3,
    err: BpEuler,
    angles: BpEuler,
    out: *mut f64,
) -> BpStatus {
    guard(|| {
        let model = ClosedForm::new(vec_of(base), err_of(err), angles_of(angles))?;
        write_out(
            out,
            "out",
            analysis::estimate_period(&model, target_of(target))?.period,
        )
    })
}
