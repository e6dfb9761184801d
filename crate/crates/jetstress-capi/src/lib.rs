//! C ABI for the jetstress verification kernel.
//!
//! Handles are opaque pointers created by the `*_parse` constructors and
//! released by the matching `*_free` functions. Arithmetic is exact
//! rational internally; numeric outputs are converted to `double` and the
//! `residual_exactly_zero` flag reports exactness where it matters.
//! Every entry point returns a [`JetstressStatus`]; on failure a
//! human-readable message is available via
//! [`jetstress_last_error_message`]. All functions are panic-safe.

use jetstress::config::{parse_section, parse_stress, StressConfig};
use jetstress::fields::{SamplingGrid, SectionField};
use jetstress::multiindex::IncreasingIndex;
use jetstress::scalar::{Rat, Scalar};
use jetstress::suites::{run_suite, suite_dim_limit, SuiteConfig};
use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetstressStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    IdentityViolation = 5,
    Panicked = 6,
}

/// A parsed section field (opaque).
pub struct JetstressSection {
    inner: SectionField<Rat>,
}

/// A parsed stress density, simple or non-holonomic (opaque).
pub struct JetstressStress {
    inner: StressConfig<Rat>,
}

/// The two sides of the balance equation and their difference, as doubles.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct JetstressBalanceReport {
    pub lhs: f64,
    pub body_term: f64,
    pub boundary_term: f64,
    pub residual: f64,
    /// True when the rational residual is exactly zero.
    pub residual_exactly_zero: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(msg).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn guard<T>(fallback: T, body: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(v) => v,
        Err(_) => {
            set_error("internal panic");
            fallback
        }
    }
}

/// # Safety
/// `text` must be a valid nul-terminated string or null.
unsafe fn read_cstr<'a>(text: *const c_char) -> Result<&'a str, JetstressStatus> {
    if text.is_null() {
        set_error("null input pointer");
        return Err(JetstressStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        JetstressStatus::InvalidUtf8
    })
}

/// Version of the linked kernel, a static string.
#[no_mangle]
pub extern "C" fn jetstress_version() -> *const c_char {
    concat!("jetstress ", env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the last error message into `buf` (truncated to `cap` bytes
/// including the nul) and returns the full message length in bytes,
/// or 0 when no error is pending. `buf` may be null to query the length.
///
/// # Safety
/// `buf`, when non-null, must point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn jetstress_last_error_message(buf: *mut c_char, cap: size_t) -> size_t {
    LAST_ERROR.with(|slot| {
        let borrow = slot.borrow();
        let Some(msg) = borrow.as_ref() else {
            return 0;
        };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            // always nul-terminate
            *buf.add(n - 1) = 0;
        }
        bytes.len() - 1
    })
}

/// Frees a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by a `*_text` or `*_report` function of
/// this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn jetstress_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn string_out(text: String) -> *mut c_char {
    match CString::new(text.replace('\0', " ")) {
        Ok(s) => s.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Parses a section config; null on error (see
/// [`jetstress_last_error_message`]).
///
/// # Safety
/// `text` must be a valid nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn jetstress_section_parse(text: *const c_char) -> *mut JetstressSection {
    guard(std::ptr::null_mut(), || {
        let Ok(text) = read_cstr(text) else {
            return std::ptr::null_mut();
        };
        match parse_section::<Rat>(text) {
            Ok(inner) => {
                clear_error();
                Box::into_raw(Box::new(JetstressSection { inner }))
            }
            Err(e) => {
                set_error(e.to_string());
                std::ptr::null_mut()
            }
        }
    })
}

/// # Safety
/// `handle` must come from [`jetstress_section_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn jetstress_section_free(handle: *mut JetstressSection) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Parses a stress config (simple or non-holonomic); null on error.
///
/// # Safety
/// `text` must be a valid nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn jetstress_stress_parse(text: *const c_char) -> *mut JetstressStress {
    guard(std::ptr::null_mut(), || {
        let Ok(text) = read_cstr(text) else {
            return std::ptr::null_mut();
        };
        match parse_stress::<Rat>(text) {
            Ok(inner) => {
                clear_error();
                Box::into_raw(Box::new(JetstressStress { inner }))
            }
            Err(e) => {
                set_error(e.to_string());
                std::ptr::null_mut()
            }
        }
    })
}

/// # Safety
/// `handle` must come from [`jetstress_stress_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn jetstress_stress_free(handle: *mut JetstressStress) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// True for a simple (symmetric-slot) stress, false for non-holonomic.
///
/// # Safety
/// `handle` must be a live stress handle.
#[no_mangle]
pub unsafe extern "C" fn jetstress_stress_is_simple(handle: *const JetstressStress) -> bool {
    if handle.is_null() {
        return false;
    }
    matches!((*handle).inner, StressConfig::Simple(_))
}

/// The stress order `r`, or -1 for a null handle.
///
/// # Safety
/// `handle` must be a live stress handle or null.
#[no_mangle]
pub unsafe extern "C" fn jetstress_stress_order(handle: *const JetstressStress) -> i32 {
    if handle.is_null() {
        return -1;
    }
    match &(*handle).inner {
        StressConfig::Simple(s) => s.order() as i32,
        StressConfig::NonHolonomic(s) => s.order() as i32,
    }
}

/// The virtual-work force represented by the stress for a section.
///
/// # Safety
/// `stress` and `section` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jetstress_force(
    stress: *const JetstressStress,
    section: *const JetstressSection,
    out: *mut f64,
) -> JetstressStatus {
    guard(JetstressStatus::Panicked, || {
        if stress.is_null() || section.is_null() || out.is_null() {
            set_error("null handle");
            return JetstressStatus::NullPointer;
        }
        let w = &(*section).inner;
        let result = match &(*stress).inner {
            StressConfig::Simple(s) => s.force_of(w),
            StressConfig::NonHolonomic(s) => s.force_of(w),
        };
        match result {
            Ok(v) => {
                clear_error();
                *out = v.to_f64();
                JetstressStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                JetstressStatus::DomainError
            }
        }
    })
}

/// Balance report of a simple stress; a non-holonomic stress of order
/// `r >= 2` is reduced one step first and balanced against the iterated
/// prolongation of the section.
///
/// # Safety
/// `stress` and `section` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jetstress_balance(
    stress: *const JetstressStress,
    section: *const JetstressSection,
    out: *mut JetstressBalanceReport,
) -> JetstressStatus {
    guard(JetstressStatus::Panicked, || {
        if stress.is_null() || section.is_null() || out.is_null() {
            set_error("null handle");
            return JetstressStatus::NullPointer;
        }
        let w = &(*section).inner;
        let report = match &(*stress).inner {
            StressConfig::Simple(s) => s.balance_check(w),
            StressConfig::NonHolonomic(s) => s.reduce().and_then(|r| r.balance_check(w)),
        };
        match report {
            Ok(report) => {
                clear_error();
                *out = JetstressBalanceReport {
                    lhs: report.lhs.to_f64(),
                    body_term: report.body_term.to_f64(),
                    boundary_term: report.boundary_term.to_f64(),
                    residual: report.residual.to_f64(),
                    residual_exactly_zero: report.residual.is_zero(),
                };
                JetstressStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                JetstressStatus::DomainError
            }
        }
    })
}

/// The generalized divergence of a simple stress as a text listing, one
/// `div[alpha] = polynomial` line per component. Free with
/// [`jetstress_string_free`]; null on error.
///
/// # Safety
/// `stress` must be a live stress handle.
#[no_mangle]
pub unsafe extern "C" fn jetstress_divergence_text(stress: *const JetstressStress) -> *mut c_char {
    guard(std::ptr::null_mut(), || {
        if stress.is_null() {
            set_error("null handle");
            return std::ptr::null_mut();
        }
        let StressConfig::Simple(s) = &(*stress).inner else {
            set_error("divergence needs a simple stress");
            return std::ptr::null_mut();
        };
        match s.divergence() {
            Ok(div) => {
                clear_error();
                let mut text = String::new();
                for alpha in 1..=s.fiber_dimension() {
                    let _ = writeln!(text, "div[{alpha}] = {}", div.component(alpha).expect("component"));
                }
                string_out(text)
            }
            Err(e) => {
                set_error(e.to_string());
                std::ptr::null_mut()
            }
        }
    })
}

/// The traction density of a simple stress as a text listing, one
/// `s[alpha](i_hat) = polynomial` line per slot. Free with
/// [`jetstress_string_free`]; null on error.
///
/// # Safety
/// `stress` must be a live stress handle.
#[no_mangle]
pub unsafe extern "C" fn jetstress_traction_text(stress: *const JetstressStress) -> *mut c_char {
    guard(std::ptr::null_mut(), || {
        if stress.is_null() {
            set_error("null handle");
            return std::ptr::null_mut();
        }
        let StressConfig::Simple(s) = &(*stress).inner else {
            set_error("traction needs a simple stress");
            return std::ptr::null_mut();
        };
        let traction = match s.traction_stress() {
            Ok(t) => t,
            Err(e) => {
                set_error(e.to_string());
                return std::ptr::null_mut();
            }
        };
        clear_error();
        let n = s.base_dimension();
        let mut text = String::new();
        for alpha in 1..=s.fiber_dimension() {
            for hat in IncreasingIndex::enumerate(n, n - 1).expect("valid degree") {
                let _ = writeln!(
                    text,
                    "s[{alpha}]{hat} = {}",
                    traction.component(alpha, &hat).expect("slot")
                );
            }
        }
        string_out(text)
    })
}

/// The grid `C^r` norm of a section.
///
/// # Safety
/// `section` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jetstress_cr_norm(
    section: *const JetstressSection,
    order: u32,
    grid_points: u32,
    out: *mut f64,
) -> JetstressStatus {
    guard(JetstressStatus::Panicked, || {
        if section.is_null() || out.is_null() {
            set_error("null handle");
            return JetstressStatus::NullPointer;
        }
        let w = &(*section).inner;
        let grid = match SamplingGrid::uniform(w.dimension(), grid_points as usize) {
            Ok(g) => g,
            Err(e) => {
                set_error(e.to_string());
                return JetstressStatus::DomainError;
            }
        };
        match w.cr_norm(order as usize, &grid) {
            Ok(v) => {
                clear_error();
                *out = v.to_f64();
                JetstressStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                JetstressStatus::DomainError
            }
        }
    })
}

/// Runs one identity suite (`exterior`, `jets`, `currents`, `stress`, or
/// `all`) with exact rational arithmetic. Returns `Ok` when every
/// identity holds, `IdentityViolation` otherwise. `dim` of 0 selects the
/// suite's maximum. When `report_out` is non-null it receives the
/// rendered report (free with [`jetstress_string_free`]).
///
/// # Safety
/// `suite` must be a valid nul-terminated string; `report_out`, when
/// non-null, must be writable.
#[no_mangle]
pub unsafe extern "C" fn jetstress_check_suite(
    suite: *const c_char,
    trials: u32,
    seed: u64,
    dim: u32,
    report_out: *mut *mut c_char,
) -> JetstressStatus {
    guard(JetstressStatus::Panicked, || {
        let suite = match read_cstr(suite) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(limit) = suite_dim_limit(suite) else {
            set_error(format!("unknown suite `{suite}`"));
            return JetstressStatus::DomainError;
        };
        let dim = if dim == 0 { limit } else { dim as usize };
        if dim > limit {
            set_error(format!("suite `{suite}` supports dimensions up to {limit}"));
            return JetstressStatus::DomainError;
        }
        let cfg = SuiteConfig::new(dim, trials as usize, seed, Rat::from_int(0));
        let reports = match run_suite(suite, &cfg) {
            Ok(r) => r,
            Err(e) => {
                set_error(e.to_string());
                return JetstressStatus::DomainError;
            }
        };
        clear_error();
        let all_ok = reports.iter().all(|r| r.all_passed());
        if !report_out.is_null() {
            let text: String = reports.iter().map(|r| r.render()).collect();
            *report_out = string_out(text);
        }
        if all_ok {
            JetstressStatus::Ok
        } else {
            set_error("at least one identity check failed");
            JetstressStatus::IdentityViolation
        }
    })
}
