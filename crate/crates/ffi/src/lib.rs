//! C interface.
//!
//! Shifts and reports are opaque handles owned by the caller and released with the
//! matching `*_free` function. Strings returned through `char **` are released with
//! `sofic_string_free`. Every fallible call returns a [`SoficStatus`]; the message of
//! the last failure on the calling thread is available from `sofic_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sofic::constructions::{build_gns, join, GnsSpec};
use sofic::engine::{Analysis, Quantity, SequenceReport};
use sofic::shift::GraphFile;
use sofic::{Error, PresentedShift};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SoficStatus {
    Ok = 0,
    InvalidGraph = 1,
    EmptyShift = 2,
    NotEssential = 3,
    WordNotInLanguage = 4,
    ClosureBudgetExceeded = 5,
    NotYetPeriodic = 6,
    WordTooShort = 7,
    InvalidSpec = 8,
    HypothesisViolated = 9,
    UncertifiedInput = 10,
    BudgetExceeded = 11,
    NoSuchLength = 12,
    Io = 13,
    NullArgument = 14,
    InvalidUtf8 = 15,
    Panic = 16,
}

impl From<&Error> for SoficStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidGraph(_) => SoficStatus::InvalidGraph,
            Error::EmptyShift => SoficStatus::EmptyShift,
            Error::NotEssential(_) => SoficStatus::NotEssential,
            Error::WordNotInLanguage(_) => SoficStatus::WordNotInLanguage,
            Error::ClosureBudgetExceeded { .. } => SoficStatus::ClosureBudgetExceeded,
            Error::NotYetPeriodic { .. } => SoficStatus::NotYetPeriodic,
            Error::WordTooShort { .. } => SoficStatus::WordTooShort,
            Error::InvalidSpec(_) => SoficStatus::InvalidSpec,
            Error::HypothesisViolated(_) => SoficStatus::HypothesisViolated,
            Error::UncertifiedInput => SoficStatus::UncertifiedInput,
            Error::BudgetExceeded { .. } => SoficStatus::BudgetExceeded,
            Error::NoSuchLength => SoficStatus::NoSuchLength,
            Error::Io(_) => SoficStatus::Io,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SoficQuantity {
    Follower = 0,
    Extender = 1,
}

impl From<SoficQuantity> for Quantity {
    fn from(q: SoficQuantity) -> Self {
        match q {
            SoficQuantity::Follower => Quantity::Follower,
            SoficQuantity::Extender => Quantity::Extender,
        }
    }
}

/// A presented shift.
pub struct SoficShift(PresentedShift);

/// A count sequence with its periodicity data.
pub struct SoficReport(SequenceReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(SoficStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), format!("{}: {e}", e.name()))
    }
}

fn null(what: &str) -> Failure {
    Failure(SoficStatus::NullArgument, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SoficStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            SoficStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SoficStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(SoficStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| Failure(SoficStatus::InvalidUtf8, "string contains nul".into()))?
        .into_raw();
    Ok(())
}

unsafe fn shift_ref<'a>(p: *const SoficShift) -> Result<&'a PresentedShift, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null("shift"))
}

/// Message for the last failed call on this thread; empty after a success. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sofic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code, matching the library's error names.
#[no_mangle]
pub extern "C" fn sofic_status_name(status: SoficStatus) -> *const c_char {
    let name: &'static CStr = match status {
        SoficStatus::Ok => c"Ok",
        SoficStatus::InvalidGraph => c"InvalidGraph",
        SoficStatus::EmptyShift => c"EmptyShift",
        SoficStatus::NotEssential => c"NotEssential",
        SoficStatus::WordNotInLanguage => c"WordNotInLanguage",
        SoficStatus::ClosureBudgetExceeded => c"ClosureBudgetExceeded",
        SoficStatus::NotYetPeriodic => c"NotYetPeriodic",
        SoficStatus::WordTooShort => c"WordTooShort",
        SoficStatus::InvalidSpec => c"InvalidSpec",
        SoficStatus::HypothesisViolated => c"HypothesisViolated",
        SoficStatus::UncertifiedInput => c"UncertifiedInput",
        SoficStatus::BudgetExceeded => c"BudgetExceeded",
        SoficStatus::NoSuchLength => c"NoSuchLength",
        SoficStatus::Io => c"Io",
        SoficStatus::NullArgument => c"NullArgument",
        SoficStatus::InvalidUtf8 => c"InvalidUtf8",
        SoficStatus::Panic => c"Panic",
    };
    name.as_ptr()
}

/// Parses a graph file, trimming it to its essential part.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_from_json(
    json: *const c_char,
    out: *mut *mut SoficShift,
) -> SoficStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let (shift, _) = GraphFile::parse(text)?.trimmed()?;
        write_out(out, SoficShift(shift))
    })
}

/// Builds `G_{n,S}`. A negative `istar` selects `min(S)`.
///
/// # Safety
/// `s` must point to `s_len` readable values (or be null with `s_len == 0`), and `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_build_gns(
    n: usize,
    s: *const usize,
    s_len: usize,
    istar: i64,
    out: *mut *mut SoficShift,
) -> SoficStatus {
    guard(|| {
        let residues: &[usize] = if s_len == 0 {
            &[]
        } else if s.is_null() {
            return Err(null("s"));
        } else {
            std::slice::from_raw_parts(s, s_len)
        };
        let istar = usize::try_from(istar).ok();
        let shift = build_gns(&GnsSpec::new(n, residues.iter().copied(), istar)?)?;
        write_out(out, SoficShift(shift))
    })
}

/// Joins two shifts through their synchronizing loops.
///
/// # Safety
/// `first` and `second` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_join(
    first: *const SoficShift,
    second: *const SoficShift,
    out: *mut *mut SoficShift,
) -> SoficStatus {
    guard(|| {
        let joined = join(shift_ref(first)?, shift_ref(second)?)?;
        write_out(out, SoficShift(joined))
    })
}

/// Canonical JSON of a shift; release with `sofic_string_free`.
///
/// # Safety
/// `shift` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_to_json(
    shift: *const SoficShift,
    out: *mut *mut c_char,
) -> SoficStatus {
    guard(|| write_string(out, shift_ref(shift)?.to_json()))
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `shift` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_vertex_count(shift: *const SoficShift) -> usize {
    shift.as_ref().map_or(0, |s| s.0.graph().vertex_count())
}

/// Count sequence for lengths `1..=lmax`.
///
/// # Safety
/// `shift` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_sequence(
    shift: *const SoficShift,
    quantity: SoficQuantity,
    lmax: usize,
    out: *mut *mut SoficReport,
) -> SoficStatus {
    guard(|| {
        let a = Analysis::new(shift_ref(shift)?.graph())?;
        let report = a.sequence(quantity.into(), lmax)?;
        write_out(out, SoficReport(report))
    })
}

unsafe fn with_report<T>(
    report: *const SoficReport,
    default: T,
    f: impl FnOnce(&SequenceReport) -> T,
) -> T {
    report.as_ref().map_or(default, |r| f(&r.0))
}

/// Number of computed lengths, or 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_len(report: *const SoficReport) -> usize {
    with_report(report, 0, |r| r.counts.len())
}

/// Count at length `l ≥ 1`, extended periodically past the computed range when
/// certified; 0 when unavailable.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_count(report: *const SoficReport, l: usize) -> usize {
    with_report(report, 0, |r| r.count(l).unwrap_or(0))
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_certified(report: *const SoficReport) -> bool {
    with_report(report, false, |r| r.certified)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_preperiod(report: *const SoficReport) -> usize {
    with_report(report, 0, |r| r.preperiod)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_period(report: *const SoficReport) -> usize {
    with_report(report, 0, |r| r.period)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_liminf(report: *const SoficReport) -> usize {
    with_report(report, 0, |r| r.liminf)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_limsup(report: *const SoficReport) -> usize {
    with_report(report, 0, |r| r.limsup)
}

/// Report as JSON; release with `sofic_string_free`.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_to_json(
    report: *const SoficReport,
    out: *mut *mut c_char,
) -> SoficStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let text = serde_json::to_string(&r.0).expect("report serializes");
        write_string(out, text)
    })
}

/// # Safety
/// `shift` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sofic_shift_free(shift: *mut SoficShift) {
    if !shift.is_null() {
        drop(Box::from_raw(shift));
    }
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sofic_report_free(report: *mut SoficReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sofic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
