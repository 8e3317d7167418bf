//! C ABI over the rank2 engine. Handles are opaque; every call returns a status code.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rank2::report::{cmd_catalog, cmd_recombine, cmd_series, cmd_split, cmd_verify, Report, RunConfig, Status};
use rank2::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    CutoffExceeded = 4,
    MathFailure = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Command {
    Catalog = 0,
    Split = 1,
    Verify = 2,
    Recombine = 3,
    Series = 4,
}

pub struct Rank2Config {
    p: u32,
    group: String,
    cutoff: Option<u32>,
    seed: u64,
}

pub struct Rank2Report {
    report: Report,
    json: CString,
}

fn status_of(e: &Error) -> Rank2Status {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) => Rank2Status::InvalidSpec,
        Error::CutoffExceeded { .. } => Rank2Status::CutoffExceeded,
        _ => Rank2Status::MathFailure,
    }
}

fn guard(f: impl FnOnce() -> Rank2Status) -> Rank2Status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(Rank2Status::Internal)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Rank2Status> {
    if s.is_null() {
        return Err(Rank2Status::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Rank2Status::InvalidUtf8)
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn rank2_status_message(status: Rank2Status) -> *const c_char {
    let s: &'static CStr = match status {
        Rank2Status::Ok => c"ok",
        Rank2Status::NullPointer => c"null pointer argument",
        Rank2Status::InvalidUtf8 => c"string is not valid UTF-8",
        Rank2Status::InvalidSpec => c"invalid group spec, prime or summand",
        Rank2Status::CutoffExceeded => c"cutoff exceeds 10000",
        Rank2Status::MathFailure => c"computation failed",
        Rank2Status::BufferTooSmall => c"buffer too small",
        Rank2Status::Internal => c"internal error",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn rank2_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Validate a configuration. `cutoff` 0 selects the default 4p^2.
///
/// # Safety
/// `group` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rank2_config_new(
    p: u32,
    group: *const c_char,
    cutoff: u32,
    seed: u64,
    out: *mut *mut Rank2Config,
) -> Rank2Status {
    guard(|| {
        if out.is_null() {
            return Rank2Status::NullPointer;
        }
        *out = ptr::null_mut();
        let group = match read_str(group) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let cutoff = (cutoff != 0).then_some(cutoff);
        if let Err(e) = RunConfig::new("check", p, group, cutoff, seed, None) {
            return status_of(&e);
        }
        *out = Box::into_raw(Box::new(Rank2Config { p, group: group.to_string(), cutoff, seed }));
        Rank2Status::Ok
    })
}

/// # Safety
/// `config` must come from `rank2_config_new` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rank2_config_free(config: *mut Rank2Config) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Run a command. `summand` may be NULL except for Recombine and Series.
///
/// # Safety
/// `config` must be a live handle; `summand` NULL or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rank2_run(
    config: *const Rank2Config,
    command: Rank2Command,
    summand: *const c_char,
    out: *mut *mut Rank2Report,
) -> Rank2Status {
    guard(|| {
        if config.is_null() || out.is_null() {
            return Rank2Status::NullPointer;
        }
        *out = ptr::null_mut();
        let c = &*config;
        let summand = if summand.is_null() {
            None
        } else {
            match read_str(summand) {
                Ok(s) => Some(s.to_string()),
                Err(s) => return s,
            }
        };
        let name = match command {
            Rank2Command::Catalog => "catalog",
            Rank2Command::Split => "split",
            Rank2Command::Verify => "verify",
            Rank2Command::Recombine => "recombine",
            Rank2Command::Series => "series",
        };
        let result = RunConfig::new(name, c.p, &c.group, c.cutoff, c.seed, summand).and_then(|rc| match command {
            Rank2Command::Catalog => cmd_catalog(&rc),
            Rank2Command::Split => cmd_split(&rc),
            Rank2Command::Verify => cmd_verify(&rc),
            Rank2Command::Recombine => cmd_recombine(&rc),
            Rank2Command::Series => cmd_series(&rc),
        });
        match result {
            Ok(report) => {
                let json = CString::new(report.to_json()).expect("JSON has no NUL bytes");
                *out = Box::into_raw(Box::new(Rank2Report { report, json }));
                Rank2Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// 1 if no check failed, 0 otherwise, -1 for NULL.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn rank2_report_passed(report: *const Rank2Report) -> i32 {
    match report.as_ref() {
        None => -1,
        Some(r) => r.report.passed() as i32,
    }
}

/// Number of checks and number of failing checks.
///
/// # Safety
/// `report` must be a live handle; the out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn rank2_report_counts(report: *const Rank2Report, checks: *mut usize, failed: *mut usize) -> Rank2Status {
    let (Some(r), false, false) = (report.as_ref(), checks.is_null(), failed.is_null()) else {
        return Rank2Status::NullPointer;
    };
    *checks = r.report.checks.len();
    *failed = r.report.checks.iter().filter(|c| c.status == Status::Fail).count();
    Rank2Status::Ok
}

/// Copy the JSON report, NUL included, into `buf`. `needed` receives the required size.
///
/// # Safety
/// `report` must be a live handle; `buf` must hold `len` bytes or be NULL with `len` 0.
#[no_mangle]
pub unsafe extern "C" fn rank2_report_json(report: *const Rank2Report, buf: *mut c_char, len: usize, needed: *mut usize) -> Rank2Status {
    let Some(r) = report.as_ref() else {
        return Rank2Status::NullPointer;
    };
    let bytes = r.json.as_bytes_with_nul();
    if !needed.is_null() {
        *needed = bytes.len();
    }
    if len < bytes.len() {
        return Rank2Status::BufferTooSmall;
    }
    if buf.is_null() {
        return Rank2Status::NullPointer;
    }
    ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, bytes.len());
    Rank2Status::Ok
}

/// Coefficients from a Series report, degrees 0..=cutoff.
///
/// # Safety
/// `report` must be a live handle; `buf` must hold `len` values or be NULL with `len` 0.
#[no_mangle]
pub unsafe extern "C" fn rank2_report_expansion(report: *const Rank2Report, buf: *mut i64, len: usize, needed: *mut usize) -> Rank2Status {
    let Some(r) = report.as_ref() else {
        return Rank2Status::NullPointer;
    };
    let Some(e) = r.report.summands.first().and_then(|s| s.expansion.as_ref()) else {
        return Rank2Status::MathFailure;
    };
    if !needed.is_null() {
        *needed = e.len();
    }
    if len < e.len() {
        return Rank2Status::BufferTooSmall;
    }
    if buf.is_null() {
        return Rank2Status::NullPointer;
    }
    ptr::copy_nonoverlapping(e.as_ptr(), buf, e.len());
    Rank2Status::Ok
}

/// # Safety
/// `report` must come from `rank2_run` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rank2_report_free(report: *mut Rank2Report) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
