//! C ABI over the `vcwb` workbench.
//!
//! Every entry point returns a [`VcwbStatus`]; results come back through out
//! pointers as opaque handles that the caller releases with the matching
//! `*_free`. On a non-OK status, [`vcwb_last_error`] describes the failure.
//! Strings returned by the library are freed with [`vcwb_string_free`].
//!
//! Sources are the same strings the CLI accepts: a JSON file path or `builtin:NAME`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vcwb::enriched::{verify_vcategory, VCat, VCategory};
use vcwb::report::Status;
use vcwb::workbench::{
    cmd_check_tensored, cmd_classify, cmd_complete, cmd_validate, CompleteOptions, Outcome, RunReport, Source,
    ValidateKind,
};
use vcwb::Error;

/// Result of every call. Law failures are not errors: they come back as a
/// report with a failing verdict and status `VCWB_OK`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcwbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    ShapeMismatch = 4,
    UnknownObject = 5,
    Scalar = 6,
    CoverageGap = 7,
    Representability = 8,
    Triangle = 9,
    ClosednessMissing = 10,
    AdjointMismatch = 11,
    NotInvertible = 12,
    Panic = 13,
}

/// Overall verdict of a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcwbVerdict {
    Pass = 0,
    Fail = 1,
    Undetermined = 2,
}

/// `kind` argument of [`vcwb_validate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcwbKind {
    Base = 0,
    Vcat = 1,
    Vmonoidal = 2,
    Tensoring = 3,
}

/// A materialized V-category.
pub struct VcwbCategory {
    inner: VCategory,
}

/// The report of a command and, for producing commands, its output document.
pub struct VcwbReport {
    report: RunReport,
    output: Option<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(VcwbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Scalar(_) => VcwbStatus::Scalar,
            Error::ShapeMismatch(_) => VcwbStatus::ShapeMismatch,
            Error::UnknownObject(_) => VcwbStatus::UnknownObject,
            Error::CoverageGap { .. } => VcwbStatus::CoverageGap,
            Error::RepresentabilityFailure { .. } => VcwbStatus::Representability,
            Error::TriangleFailure(_) => VcwbStatus::Triangle,
            Error::ClosednessDataMissing(_) => VcwbStatus::ClosednessMissing,
            Error::AdjointMismatch(_) => VcwbStatus::AdjointMismatch,
            Error::NotInvertible(_) => VcwbStatus::NotInvertible,
            Error::Parse { .. } => VcwbStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, storing its result in `out` and recording any failure.
fn guard<T>(out: *mut *mut T, f: impl FnOnce() -> Result<T, Failure>) -> VcwbStatus {
    if out.is_null() {
        set_last_error("output pointer is null");
        return VcwbStatus::NullArgument;
    }
    // SAFETY: `out` is non-null and the caller guarantees it is writable.
    unsafe { *out = ptr::null_mut() };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: as above.
            unsafe { *out = Box::into_raw(Box::new(v)) };
            VcwbStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            VcwbStatus::Panic
        }
    }
}

/// # Safety
/// `s` is null or a NUL-terminated string valid for the duration of the call.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(VcwbStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(VcwbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// As [`read_str`].
unsafe fn read_source(s: *const c_char, what: &str) -> Result<Source, Failure> {
    Ok(read_str(s, what)?.parse().expect("source parsing is infallible"))
}

fn into_report(o: Outcome) -> VcwbReport {
    VcwbReport { output: o.output_text(), report: o.report }
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The message of the last failed call on this thread, or NULL if none.
/// Free with [`vcwb_string_free`].
#[no_mangle]
pub extern "C" fn vcwb_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vcwb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a V-category from its JSON document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcwb_category_from_json(json: *const c_char, out: *mut *mut VcwbCategory) -> VcwbStatus {
    guard(out, || {
        let text = read_str(json, "json")?;
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        Ok(VcwbCategory { inner: VCategory::from_json(&value)? })
    })
}

/// Number of objects in the category, or 0 for NULL.
///
/// # Safety
/// `cat` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcwb_category_object_count(cat: *const VcwbCategory) -> usize {
    cat.as_ref().map_or(0, |c| c.inner.objects().len())
}

/// Checks associativity and both unit laws.
///
/// # Safety
/// `cat` is a live handle; `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcwb_category_verify(cat: *const VcwbCategory, out: *mut *mut VcwbReport) -> VcwbStatus {
    guard(out, || {
        let c = cat.as_ref().ok_or_else(|| Failure(VcwbStatus::NullArgument, "category is null".into()))?;
        let report = RunReport::new("validate", verify_vcategory(&c.inner));
        Ok(VcwbReport { report, output: None })
    })
}

/// # Safety
/// `cat` is NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vcwb_category_free(cat: *mut VcwbCategory) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// `vcwb validate`. `category` is required for `VCWB_KIND_TENSORING` and may be NULL otherwise.
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcwb_validate(
    kind: VcwbKind,
    source: *const c_char,
    category: *const c_char,
    out: *mut *mut VcwbReport,
) -> VcwbStatus {
    guard(out, || {
        let kind = match kind {
            VcwbKind::Base => ValidateKind::Base,
            VcwbKind::Vcat => ValidateKind::Vcat,
            VcwbKind::Vmonoidal => ValidateKind::Vmonoidal,
            VcwbKind::Tensoring => ValidateKind::Tensoring,
        };
        let src = read_source(source, "source")?;
        let cat = if category.is_null() { None } else { Some(read_source(category, "category")?) };
        Ok(into_report(cmd_validate(kind, &src, cat.as_ref())?))
    })
}

/// `vcwb complete`. A `dim_cap` of 0 selects the default cap.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcwb_complete(
    category: *const c_char,
    window: *const c_char,
    monoidal: bool,
    dim_cap: usize,
    out: *mut *mut VcwbReport,
) -> VcwbStatus {
    guard(out, || {
        let (c, w) = (read_source(category, "category")?, read_source(window, "window")?);
        let dim_cap = if dim_cap == 0 { vcwb::completion::DEFAULT_DIM_CAP } else { dim_cap };
        Ok(into_report(cmd_complete(&c, &w, CompleteOptions { monoidal, dim_cap })?))
    })
}

/// `vcwb check-tensored`.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcwb_check_tensored(
    category: *const c_char,
    tensoring: *const c_char,
    monoidal: bool,
    out: *mut *mut VcwbReport,
) -> VcwbStatus {
    guard(out, || {
        let (c, t) = (read_source(category, "category")?, read_source(tensoring, "tensoring")?);
        Ok(into_report(cmd_check_tensored(&c, &t, monoidal)?))
    })
}

/// `vcwb classify`.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vcwb_classify(
    vmonoidal: *const c_char,
    tensoring: *const c_char,
    out: *mut *mut VcwbReport,
) -> VcwbStatus {
    guard(out, || {
        let (c, t) = (read_source(vmonoidal, "vmonoidal")?, read_source(tensoring, "tensoring")?);
        Ok(into_report(cmd_classify(&c, &t)?))
    })
}

/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcwb_report_verdict(report: *const VcwbReport) -> VcwbVerdict {
    match report.as_ref().map(|r| r.report.verdict) {
        Some(Status::Pass) => VcwbVerdict::Pass,
        Some(Status::Undetermined) => VcwbVerdict::Undetermined,
        Some(Status::Fail) | None => VcwbVerdict::Fail,
    }
}

/// The CLI exit code for this report: 0 pass, 1 otherwise.
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcwb_report_exit_code(report: *const VcwbReport) -> i32 {
    report.as_ref().map_or(vcwb::workbench::EXIT_FAIL, |r| r.report.exit_code())
}

/// The report as JSON. Free with [`vcwb_string_free`].
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcwb_report_json(report: *const VcwbReport) -> *mut c_char {
    report.as_ref().map_or(ptr::null_mut(), |r| to_c_string(&r.report.to_json()))
}

/// The output document, or NULL for commands that produce none. Free with [`vcwb_string_free`].
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcwb_report_output(report: *const VcwbReport) -> *mut c_char {
    report.as_ref().and_then(|r| r.output.as_deref()).map_or(ptr::null_mut(), to_c_string)
}

/// # Safety
/// `report` is NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vcwb_report_free(report: *mut VcwbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
