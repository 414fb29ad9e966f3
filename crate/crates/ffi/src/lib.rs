//! C interface: opaque space and report handles, status codes, and a
//! thread-local message for the last failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::ValueEnum;
use tightspace::cli::{run, Command, GraphDocument, Overrides, Report};
use tightspace::filters::{enumerate_tight_finite, enumerate_tight_lassos, spectrum_verdict, SpectrumVerdict};
use tightspace::labelled::LabelledSpace;
use tightspace::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a document that does not describe a graph.
    InvalidDocument = 3,
    /// The family lacks a structural property the operation needs.
    UnsupportedSpace = 4,
    InvalidArgument = 5,
    UnknownCommand = 6,
    Panic = 7,
}

/// A labelled graph with its family of vertex sets.
pub struct TsSpace {
    space: LabelledSpace,
}

/// A JSON report produced by a command.
pub struct TsReport {
    json: CString,
    exit_status: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(error: &Error) -> TsStatus {
    match error {
        Error::Document(_)
        | Error::DuplicateId(_)
        | Error::UnknownVertex { .. }
        | Error::UnknownVertexId(_)
        | Error::UnknownLetter(_)
        | Error::NoEdges
        | Error::TooManyVertices(_)
        | Error::TooLarge(_) => TsStatus::InvalidDocument,
        Error::NotAccommodating
        | Error::NoComplements
        | Error::NotWeaklyLeftResolving
        | Error::NotLeftResolving
        | Error::NotPowerSet => TsStatus::UnsupportedSpace,
        _ => TsStatus::InvalidArgument,
    }
}

fn fail(error: Error) -> TsStatus {
    set_error(error.to_string());
    status_of(&error)
}

fn guarded(body: impl FnOnce() -> TsStatus) -> TsStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| {
        set_error("internal panic");
        TsStatus::Panic
    })
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, TsStatus> {
    if text.is_null() {
        set_error("null pointer");
        return Err(TsStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("input is not UTF-8");
        TsStatus::InvalidUtf8
    })
}

/// Message for the last failure on this thread. Valid until the next call on
/// the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a graph document. On success `*out` owns a new space.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_space_from_json(json: *const c_char, out: *mut *mut TsSpace) -> TsStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null pointer");
            return TsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match GraphDocument::parse(text).and_then(|d| d.space()) {
            Ok(space) => {
                *out = Box::into_raw(Box::new(TsSpace { space }));
                TsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `space` must come from `ts_space_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_space_free(space: *mut TsSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// # Safety
/// `space` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_space_vertex_count(space: *const TsSpace) -> usize {
    space.as_ref().map_or(0, |s| s.space.graph().vertex_count())
}

/// # Safety
/// `space` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_space_family_size(space: *const TsSpace) -> usize {
    space.as_ref().map_or(0, |s| s.space.family().len())
}

/// Counts the tight filters within the bounds. `*exhaustive` is set when the
/// counted filters are the whole spectrum.
///
/// # Safety
/// `space` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_tight_count(
    space: *const TsSpace,
    word_bound: usize,
    lasso_bound: usize,
    finite_out: *mut usize,
    lasso_out: *mut usize,
    exhaustive_out: *mut bool,
) -> TsStatus {
    guarded(|| {
        let Some(s) = space.as_ref() else {
            set_error("null pointer");
            return TsStatus::NullPointer;
        };
        if finite_out.is_null() || lasso_out.is_null() || exhaustive_out.is_null() {
            set_error("null pointer");
            return TsStatus::NullPointer;
        }
        if let Err(e) = s.space.require_boolean() {
            return fail(e);
        }
        let finite = enumerate_tight_finite(&s.space, word_bound).len();
        let lassos = enumerate_tight_lassos(&s.space, lasso_bound).lassos.len();
        let verdict = match spectrum_verdict(&s.space) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        *finite_out = finite;
        *lasso_out = lassos;
        *exhaustive_out = verdict == SpectrumVerdict::Finite(finite + lassos);
        TsStatus::Ok
    })
}

/// Runs a command (`check`, `tight`, `semigroup`, `boundary`, `surgery`,
/// `diagonal`, `represent`, `discriminate`) on a graph document with the
/// document's own options. A report is produced even for invalid documents;
/// its exit status is then 2.
///
/// # Safety
/// `command` and `json` must be NUL-terminated strings and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_run(command: *const c_char, json: *const c_char, out: *mut *mut TsReport) -> TsStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null pointer");
            return TsStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let name = match read_str(command) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Ok(command) = Command::from_str(name, false) else {
            set_error(format!("unknown command {name:?}"));
            return TsStatus::UnknownCommand;
        };
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let report: Report = run(command, "<ffi>", text, Overrides::default());
        let json = CString::new(report.to_json()).expect("JSON has no nul bytes");
        *out = Box::into_raw(Box::new(TsReport {
            json,
            exit_status: report.exit_status,
        }));
        TsStatus::Ok
    })
}

/// The report as JSON, owned by the report.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_report_json(report: *const TsReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// 0 when every property held, 1 on a violation, 2 on invalid input; -1 for
/// a null handle.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ts_report_exit_status(report: *const TsReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.exit_status)
}

/// # Safety
/// `report` must come from `ts_run` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ts_report_free(report: *mut TsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
