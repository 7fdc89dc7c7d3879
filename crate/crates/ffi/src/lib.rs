//! C ABI over the manifest runner and presented modules.
//!
//! Objects are opaque and owned by the caller once returned; each has a
//! matching `_free`. Strings returned by the library are freed with
//! `qc_string_free`. On any status other than `QC_STATUS_OK` the message is
//! available from `qc_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcousin::cli::{parse_manifest, run_command, Manifest, RunReport};
use qcousin::modpres::PresentedModule;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcStatus {
    Ok = 0,
    /// A verification finding failed; the report is still produced.
    VerificationFailed = 1,
    /// Malformed or inconsistent input.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

pub struct QcManifest(Manifest);

pub struct QcReport(RunReport);

pub struct QcModule(PresentedModule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(s).expect("nul bytes removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, turning panics into `QC_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> QcStatus) -> QcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            QcStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QcStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(QcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        QcStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates a manifest.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qc_manifest_parse(text: *const c_char, out: *mut *mut QcManifest) -> QcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_manifest(text) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(QcManifest(m)));
                QcStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                QcStatus::InputError
            }
        }
    })
}

/// Canonical text of a manifest; free with `qc_string_free`.
///
/// # Safety
/// `m` must come from `qc_manifest_parse`.
#[no_mangle]
pub unsafe extern "C" fn qc_manifest_serialize(m: *const QcManifest) -> *mut c_char {
    match m.as_ref() {
        Some(m) => into_c_string(m.0.serialize()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `m` must come from `qc_manifest_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qc_manifest_free(m: *mut QcManifest) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Runs the manifest's command. Returns `QC_STATUS_VERIFICATION_FAILED`
/// with a valid report when a finding failed.
///
/// # Safety
/// `m` must come from `qc_manifest_parse`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qc_run(m: *const QcManifest, out: *mut *mut QcReport) -> QcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(m) = m.as_ref() else {
            set_error("null manifest");
            return QcStatus::NullPointer;
        };
        match run_command(&m.0) {
            Ok(r) => {
                let failed = r.exit_code() == 1;
                *out = Box::into_raw(Box::new(QcReport(r)));
                if failed {
                    set_error("a verification finding failed");
                    QcStatus::VerificationFailed
                } else {
                    QcStatus::Ok
                }
            }
            Err(e) => {
                set_error(e.to_string());
                QcStatus::InputError
            }
        }
    })
}

/// The JSON report, byte-identical to the command line output; free with
/// `qc_string_free`.
///
/// # Safety
/// `r` must come from `qc_run`.
#[no_mangle]
pub unsafe extern "C" fn qc_report_json(r: *const QcReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => into_c_string(r.0.to_json()),
        None => ptr::null_mut(),
    }
}

/// 0 or 1 as the command line would exit; -1 for NULL.
///
/// # Safety
/// `r` must come from `qc_run`.
#[no_mangle]
pub unsafe extern "C" fn qc_report_exit_code(r: *const QcReport) -> i32 {
    r.as_ref().map_or(-1, |r| r.0.exit_code())
}

/// # Safety
/// `r` must come from `qc_run` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qc_report_free(r: *mut QcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Builds a presented module from generator degrees and relation lines in
/// manifest syntax (`"deg | entry ; entry"`).
///
/// # Safety
/// `field` is NUL-terminated; `degrees` has `ngens` entries; `relations`
/// has `nrels` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qc_module_new(
    field: *const c_char,
    n: u32,
    degrees: *const i64,
    ngens: usize,
    relations: *const *const c_char,
    nrels: usize,
    out: *mut *mut QcModule,
) -> QcStatus {
    guard(|| {
        if out.is_null() || (ngens > 0 && degrees.is_null()) || (nrels > 0 && relations.is_null()) {
            set_error("null pointer argument");
            return QcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let field = match read_str(field) {
            Ok(f) => f,
            Err(s) => return s,
        };
        let degs = if ngens == 0 { &[][..] } else { std::slice::from_raw_parts(degrees, ngens) };
        let mut text = format!("[problem]\nfield = {field}\nn = {n}\ncommand = hilbert\n[module M]\ngenerators = ");
        text.push_str(&degs.iter().map(i64::to_string).collect::<Vec<_>>().join(", "));
        text.push('\n');
        for i in 0..nrels {
            let r = match read_str(*relations.add(i)) {
                Ok(r) => r,
                Err(s) => return s,
            };
            if r.contains('\n') || r.contains('#') {
                set_error(format!("relation {} must be a single line", i + 1));
                return QcStatus::InputError;
            }
            text.push_str("relation = ");
            text.push_str(r);
            text.push('\n');
        }
        let module = parse_manifest(&text).and_then(|m| m.resolve()).map(|mut p| p.modules.remove("M").expect("declared"));
        match module {
            Ok(m) => {
                *out = Box::into_raw(Box::new(QcModule(m)));
                QcStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                QcStatus::InputError
            }
        }
    })
}

/// Writes `dim M_d` for `d = lo..=hi` into `out[0..hi-lo+1]`.
///
/// # Safety
/// `m` must come from `qc_module_new`; `out` must have room for `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn qc_module_hilbert(m: *const QcModule, lo: i64, hi: i64, out: *mut usize, out_len: usize) -> QcStatus {
    guard(|| {
        let Some(m) = m.as_ref() else {
            set_error("null module");
            return QcStatus::NullPointer;
        };
        if hi < lo {
            set_error(format!("empty degree range {lo}..{hi}"));
            return QcStatus::InputError;
        }
        let len = (hi - lo + 1) as usize;
        if out.is_null() || out_len < len {
            set_error(format!("output buffer needs {len} entries"));
            return QcStatus::InputError;
        }
        let dims = m.0.hilbert_function(lo..=hi);
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&dims);
        QcStatus::Ok
    })
}

/// # Safety
/// `m` must come from `qc_module_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qc_module_free(m: *mut QcModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn qc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
