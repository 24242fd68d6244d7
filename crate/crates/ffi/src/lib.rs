//! C ABI over `elliptic_u2`.
//!
//! Every function returns an [`EllU2Status`]; results travel through out
//! pointers. Parameters live behind the opaque [`EllU2Params`] handle. The
//! message of the most recent failure on the calling thread is available
//! from [`ellu2_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use elliptic_u2::dynrep::rep_pairing_extract;
use elliptic_u2::ehs::{v_series, VParams};
use elliptic_u2::pairing::closed::closed_form_value;
use elliptic_u2::pairing::matrix::pair_matrix_matrix_oracle;
use elliptic_u2::rmatrix::elliptic_r;
use elliptic_u2::{run_suite, CampaignConfig, Error, MatrixElementIndex, ModulusParams, Suite};
use num_complex::Complex64 as C64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllU2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidModulus = 2,
    ZeroArgument = 3,
    PoleProximity = 4,
    ShiftMismatch = 5,
    NonTerminating = 6,
    InvalidIndex = 7,
    ResampleBudget = 8,
    Config = 9,
    /// A verification ran to completion but some check failed.
    CheckFailed = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

impl From<&Error> for EllU2Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidModulus { .. } => EllU2Status::InvalidModulus,
            Error::ZeroArgument => EllU2Status::ZeroArgument,
            Error::PoleProximity { .. } => EllU2Status::PoleProximity,
            Error::ShiftMismatch { .. } => EllU2Status::ShiftMismatch,
            Error::NonTerminating { .. } => EllU2Status::NonTerminating,
            Error::InvalidIndex(_) => EllU2Status::InvalidIndex,
            Error::ResampleBudget { .. } => EllU2Status::ResampleBudget,
            Error::Config(_) => EllU2Status::Config,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllU2Complex {
    pub re: f64,
    pub im: f64,
}

impl From<EllU2Complex> for C64 {
    fn from(c: EllU2Complex) -> Self {
        C64::new(c.re, c.im)
    }
}

impl From<C64> for EllU2Complex {
    fn from(c: C64) -> Self {
        EllU2Complex { re: c.re, im: c.im }
    }
}

/// Which route evaluates a matrix-element pairing.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllU2Method {
    Closed = 0,
    Oracle = 1,
    Representation = 2,
}

/// Opaque handle holding the nomes `p` and `q`.
pub struct EllU2Params {
    inner: ModulusParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

enum Failure {
    Status(EllU2Status, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null() -> Failure {
    Failure::Status(EllU2Status::NullPointer, "null pointer argument".into())
}

/// Runs `f`, mapping errors and panics to a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EllU2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EllU2Status::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            EllU2Status::from(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic".into());
            EllU2Status::Panic
        }
    }
}

unsafe fn params<'a>(p: *const EllU2Params) -> Result<&'a ModulusParams, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(null)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Status(EllU2Status::InvalidUtf8, "string is not UTF-8".into()))
}

/// Creates a parameter handle; free it with [`ellu2_params_free`].
///
/// # Safety
/// `out_handle` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ellu2_params_new(p: f64, q: f64, out_handle: *mut *mut EllU2Params) -> EllU2Status {
    guard(|| {
        let slot = out(out_handle)?;
        let inner = ModulusParams::new(p, q)?;
        *slot = Box::into_raw(Box::new(EllU2Params { inner }));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`ellu2_params_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ellu2_params_free(handle: *mut EllU2Params) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `θ(z; p)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ellu2_theta(
    handle: *const EllU2Params,
    z: EllU2Complex,
    result: *mut EllU2Complex,
) -> EllU2Status {
    guard(|| {
        let m = params(handle)?;
        *out(result)? = m.theta(z.into())?.into();
        Ok(())
    })
}

/// The elliptic dynamical R-matrix, written row-major into 16 entries.
///
/// # Safety
/// `result` must point to at least 16 writable elements.
#[no_mangle]
pub unsafe extern "C" fn ellu2_elliptic_r(
    handle: *const EllU2Params,
    lambda: EllU2Complex,
    z: EllU2Complex,
    result: *mut EllU2Complex,
) -> EllU2Status {
    guard(|| {
        let m = params(handle)?;
        if result.is_null() {
            return Err(null());
        }
        let r = elliptic_r(m, lambda.into(), z.into())?;
        let dst = std::slice::from_raw_parts_mut(result, 16);
        for (d, s) in dst.iter_mut().zip(r.m.iter().flatten()) {
            *d = (*s).into();
        }
        Ok(())
    })
}

/// Terminating very-well-poised series with `a1` and trailing parameters
/// `a6, …`.
///
/// # Safety
/// `trailing` must point to `len` readable elements.
#[no_mangle]
pub unsafe extern "C" fn ellu2_v_series(
    handle: *const EllU2Params,
    a1: EllU2Complex,
    trailing: *const EllU2Complex,
    len: usize,
    result: *mut EllU2Complex,
) -> EllU2Status {
    guard(|| {
        let m = params(handle)?;
        if trailing.is_null() && len > 0 {
            return Err(null());
        }
        let rest: Vec<C64> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(trailing, len).iter().map(|&c| c.into()).collect()
        };
        *out(result)? = v_series(m, &VParams::new(a1.into(), rest))?.into();
        Ok(())
    })
}

/// Coefficient at `λ` of `⟨t^M_{rs}(w), t^N_{kj}(z)⟩` and its shift.
///
/// # Safety
/// Pointers must be valid; `shift` may be null.
#[no_mangle]
pub unsafe extern "C" fn ellu2_pairing(
    handle: *const EllU2Params,
    m_dim: i32,
    r: i32,
    s: i32,
    w: EllU2Complex,
    n_dim: i32,
    k: i32,
    j: i32,
    z: EllU2Complex,
    lambda: EllU2Complex,
    method: EllU2Method,
    result: *mut EllU2Complex,
    shift: *mut i32,
) -> EllU2Status {
    guard(|| {
        let m = params(handle)?;
        let slot = out(result)?;
        let x = MatrixElementIndex::new(m_dim, r, s, w.into())?;
        let t = MatrixElementIndex::new(n_dim, k, j, z.into())?;
        let lambda = C64::from(lambda);
        let value = match method {
            EllU2Method::Closed => closed_form_value(m, &x, &t, lambda)?,
            EllU2Method::Oracle => pair_matrix_matrix_oracle(m, &x, &t)?.eval(lambda),
            EllU2Method::Representation => {
                rep_pairing_extract(m, &x, n_dim, k, j, z.into(), lambda - (2 * s - m_dim) as f64)?
            }
        };
        *slot = value.into();
        if let Some(sh) = shift.as_mut() {
            *sh = n_dim + m_dim - 2 * s - 2 * j;
        }
        Ok(())
    })
}

/// Runs a verification suite (`theta`, …, `all`) and returns the JSON
/// report through `report_json`, to be released with [`ellu2_string_free`].
/// `config_toml` may be null for defaults; `seed` overrides its seed when
/// `override_seed` is nonzero. Returns [`EllU2Status::CheckFailed`] with a
/// report when a check failed.
///
/// # Safety
/// Strings must be NUL-terminated; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ellu2_verify(
    suite: *const c_char,
    config_toml: *const c_char,
    override_seed: i32,
    seed: u64,
    report_json: *mut *mut c_char,
) -> EllU2Status {
    let mut failed = false;
    let status = guard(|| {
        let slot = out(report_json)?;
        *slot = ptr::null_mut();
        let name = text(suite)?;
        let suite = Suite::from_name(name)
            .ok_or_else(|| Failure::Status(EllU2Status::Config, format!("unknown suite `{name}`")))?;
        let mut cfg = if config_toml.is_null() {
            CampaignConfig::default()
        } else {
            CampaignConfig::from_toml_str(text(config_toml)?)?
        };
        if override_seed != 0 {
            cfg.seed = seed;
        }
        let report = run_suite(suite, &cfg)?;
        failed = !report.passed();
        let json = elliptic_u2::verify::report_json(&report);
        *slot = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    });
    if status == EllU2Status::Ok && failed {
        set_last_error("one or more checks failed".into());
        EllU2Status::CheckFailed
    } else {
        status
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ellu2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ellu2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
