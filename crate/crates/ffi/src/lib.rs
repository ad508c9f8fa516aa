//! C ABI over the ghostsim core: opaque scenario and profile handles,
//! integer status codes and a per-thread last-error message.
//!
//! Every function returning [`GhostsimStatus`] writes its out-parameters
//! only on success. Panics never cross the boundary.
//!
//! Pointer contract for all `unsafe` entry points: handles come from this
//! library and are not used after being freed, strings are NUL-terminated,
//! out-pointers and buffers are writable for the stated length. Null is
//! reported as `NullPointer` rather than dereferenced.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ghostsim::biphoton::{default_grid, Plane, Resolution};
use ghostsim::detection::{
    CcrProfile, CcrSolver, DetectorModel, IntegratingMethod, Methods, PointMethod,
};
use ghostsim::geometry::{GridSpec, Preset, Scenario};
use ghostsim::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostsimStatus {
    Ok = 0,
    NullPointer = 1,
    /// Unknown name, malformed text or an option the model does not take.
    InvalidArgument = 2,
    /// The scenario violates a physical or geometric invariant.
    Invariant = 3,
    /// Sampling, quadrature or FWHM failure.
    Numerics = 4,
    /// Caller buffer shorter than the profile.
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostsimPlane {
    Ghost = 0,
    Diffraction = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostsimDetector {
    Integrating = 0,
    Point = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostsimMethod {
    /// Parseval for integrating detectors, Fresnel for point detectors.
    Default = 0,
    Parseval = 1,
    Direct = 2,
    Fresnel = 3,
    Fraunhofer = 4,
}

/// Opaque experiment description.
pub struct GhostsimScenario(Scenario);

/// Opaque peak-normalized counting-rate profile.
pub struct GhostsimProfile(CcrProfile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn remember(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GhostsimStatus {
    match e {
        Error::Invariant(_) => GhostsimStatus::Invariant,
        Error::InvalidGrid(_)
        | Error::Quadrature(_)
        | Error::Nyquist { .. }
        | Error::Fwhm(_)
        | Error::ZeroProfile
        | Error::GridMismatch
        | Error::FocalCapture { .. }
        | Error::NotFraunhofer { .. } => GhostsimStatus::Numerics,
        _ => GhostsimStatus::InvalidArgument,
    }
}

struct Fail(GhostsimStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(GhostsimStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GhostsimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GhostsimStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            remember(msg);
            status
        }
        Err(_) => {
            remember("internal panic".into());
            GhostsimStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Fail(
            GhostsimStatus::InvalidArgument,
            format!("{what} is not UTF-8"),
        )
    })
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next ghostsim call on the same thread.
#[no_mangle]
pub extern "C" fn ghostsim_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ghostsim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// New scenario from a built-in name such as "fig3_noslit".
#[no_mangle]
pub unsafe extern "C" fn ghostsim_scenario_from_preset(
    name: *const c_char,
    out: *mut *mut GhostsimScenario,
) -> GhostsimStatus {
    guard(|| {
        let name = text(name, "name")?;
        let out = out_ptr(out, "out")?;
        let p: Preset = name.parse()?;
        *out = Box::into_raw(Box::new(GhostsimScenario(p.scenario())));
        Ok(())
    })
}

/// New scenario from `key = value` text naming every field once.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_scenario_from_kv(
    kv_text: *const c_char,
    out: *mut *mut GhostsimScenario,
) -> GhostsimStatus {
    guard(|| {
        let t = text(kv_text, "kv_text")?;
        let out = out_ptr(out, "out")?;
        let s: Scenario = t.parse()?;
        *out = Box::into_raw(Box::new(GhostsimScenario(s)));
        Ok(())
    })
}

/// Applies one `key=value` override with the same rules as the command
/// line. The scenario is unchanged when the result would be invalid.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_scenario_set(
    s: *mut GhostsimScenario,
    key: *const c_char,
    value: *const c_char,
) -> GhostsimStatus {
    guard(|| {
        let s = out_ptr(s, "scenario")?;
        let assignment = format!("{}={}", text(key, "key")?, text(value, "value")?);
        s.0 = s.0.with_overrides(&[assignment])?;
        Ok(())
    })
}

/// Reads one field in SI units. An absent signal slit reads as NaN.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_scenario_get(
    s: *const GhostsimScenario,
    key: *const c_char,
    out: *mut f64,
) -> GhostsimStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("scenario"))?;
        let key = text(key, "key")?;
        let out = out_ptr(out, "out")?;
        *out = s.0.get(key)?.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Releases a scenario; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_scenario_free(s: *mut GhostsimScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

fn methods(detector: DetectorModel, plane: Plane, m: GhostsimMethod) -> Result<Methods, Fail> {
    let mut out = Methods::default();
    let bad = || {
        Fail(
            GhostsimStatus::InvalidArgument,
            format!("method {m:?} does not apply to a {detector} detector in the {plane} plane"),
        )
    };
    match (detector, plane, m) {
        (_, _, GhostsimMethod::Default) => {}
        (DetectorModel::Integrating, _, GhostsimMethod::Parseval) => {}
        (DetectorModel::Integrating, _, GhostsimMethod::Direct) => {
            out.integrating = IntegratingMethod::Direct
        }
        (DetectorModel::Point, Plane::Diffraction, GhostsimMethod::Fresnel) => {}
        (DetectorModel::Point, Plane::Diffraction, GhostsimMethod::Fraunhofer) => {
            out.point = PointMethod::Fraunhofer
        }
        _ => return Err(bad()),
    }
    Ok(out)
}

/// Computes a profile on [-half_width, half_width] with `n_points` samples.
/// `n_points == 0` or `half_width <= 0` selects the plane's default.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_profile_compute(
    s: *const GhostsimScenario,
    plane: GhostsimPlane,
    detector: GhostsimDetector,
    method: GhostsimMethod,
    n_points: usize,
    half_width: f64,
    out: *mut *mut GhostsimProfile,
) -> GhostsimStatus {
    guard(|| {
        let s = &s.as_ref().ok_or_else(|| null("scenario"))?.0;
        let out = out_ptr(out, "out")?;
        let plane = match plane {
            GhostsimPlane::Ghost => Plane::Ghost,
            GhostsimPlane::Diffraction => Plane::Diffraction,
        };
        let detector = match detector {
            GhostsimDetector::Integrating => DetectorModel::Integrating,
            GhostsimDetector::Point => DetectorModel::Point,
        };
        let m = methods(detector, plane, method)?;
        let res = Resolution::default();
        let default = default_grid(s, plane, &res)?;
        let h = if half_width > 0.0 {
            half_width
        } else {
            default.x_max()
        };
        let n = if n_points > 0 {
            n_points
        } else {
            default.n_points()
        };
        let grid = GridSpec::symmetric(h, n)?;
        let p =
            CcrSolver::new(res, Default::default()).profile(s, plane, detector, m, Some(&grid))?;
        *out = Box::into_raw(Box::new(GhostsimProfile(p)));
        Ok(())
    })
}

/// Number of samples; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_profile_len(p: *const GhostsimProfile) -> usize {
    p.as_ref().map_or(0, |p| p.0.grid().n_points())
}

/// FWHM in meters.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_profile_fwhm(
    p: *const GhostsimProfile,
    out: *mut f64,
) -> GhostsimStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        *out_ptr(out, "out")? = p.0.fwhm.fwhm;
        Ok(())
    })
}

unsafe fn copy_out(src: &[f64], buf: *mut f64, len: usize) -> Result<(), Fail> {
    if buf.is_null() {
        return Err(null("buffer"));
    }
    if len < src.len() {
        return Err(Fail(
            GhostsimStatus::BufferTooSmall,
            format!("buffer holds {len} values, profile has {}", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Copies the sample positions (meters) into `buf`.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_profile_copy_x(
    p: *const GhostsimProfile,
    buf: *mut f64,
    len: usize,
) -> GhostsimStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        copy_out(&p.0.grid().points(), buf, len)
    })
}

/// Copies the peak-normalized intensities into `buf`.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_profile_copy_values(
    p: *const GhostsimProfile,
    buf: *mut f64,
    len: usize,
) -> GhostsimStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        copy_out(p.0.intensity(), buf, len)
    })
}

/// Releases a profile; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ghostsim_profile_free(p: *mut GhostsimProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}
