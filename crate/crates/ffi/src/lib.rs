//! C interface to the vslink kernel.
//!
//! Diagrams cross the boundary as opaque `VslDiagram` handles. Strings
//! returned to the caller are owned by the caller and released with
//! `vsl_string_free`. Every fallible call returns a `VslStatus`; on failure
//! `vsl_last_error` describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vslink::{
    equivalent, linking_vector, normalize_cobordism, normalize_unwelded, parse_diagram,
    replay_trace, serialize_diagram, standard_form, welded_unknot_trace, Calculus, Error,
    GaussDiagram, LinkingVector, Trace,
};

/// Opaque diagram handle.
pub struct VslDiagram(GaussDiagram);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VslStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidDiagram = 4,
    Unsupported = 5,
    Move = 6,
    Trace = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VslCalculus {
    Virtual = 0,
    Welded = 1,
    Unwelded = 2,
    Cobordism = 3,
    WeldedConcordance = 4,
}

impl From<VslCalculus> for Calculus {
    fn from(c: VslCalculus) -> Self {
        match c {
            VslCalculus::Virtual => Calculus::Virtual,
            VslCalculus::Welded => Calculus::Welded,
            VslCalculus::Unwelded => Calculus::Unwelded,
            VslCalculus::Cobordism => Calculus::Cobordism,
            VslCalculus::WeldedConcordance => Calculus::WeldedConcordance,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Fail(VslStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => VslStatus::Parse,
            Error::Invalid(_) => VslStatus::InvalidDiagram,
            Error::Move(_) => VslStatus::Move,
            Error::Trace(_) => VslStatus::Trace,
            _ => VslStatus::Unsupported,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(VslStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, records any failure and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VslStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            VslStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            VslStatus::Internal
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(VslStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn diagram<'a>(p: *const VslDiagram, what: &str) -> Result<&'a GaussDiagram, Fail> {
    p.as_ref().map(|d| &d.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn handle(d: GaussDiagram) -> *mut VslDiagram {
    Box::into_raw(Box::new(VslDiagram(d)))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn vsl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn vsl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses GSLD text into a new diagram handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_parse(
    text: *const c_char,
    out: *mut *mut VslDiagram,
) -> VslStatus {
    guard(|| {
        let d = parse_diagram(c_str(text, "text")?)?;
        put(out, handle(d), "out")
    })
}

/// The trivial diagram on `strands` strands.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_empty(strands: usize, out: *mut *mut VslDiagram) -> VslStatus {
    guard(|| put(out, handle(GaussDiagram::empty(strands)), "out"))
}

/// # Safety
/// `d` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_free(d: *mut VslDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_clone(
    d: *const VslDiagram,
    out: *mut *mut VslDiagram,
) -> VslStatus {
    guard(|| put(out, handle(diagram(d, "d")?.clone()), "out"))
}

/// Number of strands, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_strands(d: *const VslDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.strands())
}

/// Number of chords, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_chords(d: *const VslDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.chord_count())
}

/// Canonical GSLD text; free the result with `vsl_string_free`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_diagram_serialize(
    d: *const VslDiagram,
    out: *mut *mut c_char,
) -> VslStatus {
    guard(|| {
        let s = serialize_diagram(diagram(d, "d")?)?;
        put(out, owned(s), "out")
    })
}

/// Writes `n(n-1)` linking numbers in lexicographic `(i, j)` order.
/// `len` always receives the required length; if `cap` is smaller the
/// call fails with `BufferTooSmall` and nothing is written.
///
/// # Safety
/// `d` must be a live handle; `buf` must hold `cap` values (may be null
/// when `cap` is 0); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_linking_vector(
    d: *const VslDiagram,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> VslStatus {
    guard(|| {
        let v = linking_vector(diagram(d, "d")?);
        let entries = v.entries();
        put(len, entries.len(), "len")?;
        if cap < entries.len() {
            return Err(Fail(
                VslStatus::BufferTooSmall,
                format!("need {} entries, have {cap}", entries.len()),
            ));
        }
        if !entries.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(entries.as_ptr(), buf, entries.len());
        }
        Ok(())
    })
}

/// Standard-form diagram realizing the given linking vector.
///
/// # Safety
/// `entries` must hold `len` values (may be null when `len` is 0); `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_standard_form(
    strands: usize,
    entries: *const i64,
    len: usize,
    out: *mut *mut VslDiagram,
) -> VslStatus {
    guard(|| {
        let v = if len == 0 {
            Vec::new()
        } else if entries.is_null() {
            return Err(null("entries"));
        } else {
            std::slice::from_raw_parts(entries, len).to_vec()
        };
        let v = LinkingVector::new(strands, v)?;
        put(out, handle(standard_form(strands, &v)?), "out")
    })
}

/// Normal form under `unwelded` or `cobordism`. If `trace` is non-null it
/// receives the certificate trace text.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable; `trace` may be null.
#[no_mangle]
pub unsafe extern "C" fn vsl_normalize(
    d: *const VslDiagram,
    calculus: VslCalculus,
    out: *mut *mut VslDiagram,
    trace: *mut *mut c_char,
) -> VslStatus {
    guard(|| {
        let d = diagram(d, "d")?;
        let (n, t) = match calculus {
            VslCalculus::Unwelded => normalize_unwelded(d)?,
            VslCalculus::Cobordism => normalize_cobordism(d)?,
            other => {
                return Err(Fail(
                    VslStatus::Unsupported,
                    format!("no normal form for calculus {}", Calculus::from(other)),
                ))
            }
        };
        if out.is_null() {
            return Err(null("out"));
        }
        if !trace.is_null() {
            trace.write(owned(t.to_string()));
        }
        out.write(handle(n));
        Ok(())
    })
}

/// Decides equivalence. When equivalent and `certificate` is non-null it
/// receives a trace from `a` to a relabeling of `b`; otherwise it is set
/// to null.
///
/// # Safety
/// `a` and `b` must be live handles; `verdict` must be writable;
/// `certificate` may be null.
#[no_mangle]
pub unsafe extern "C" fn vsl_equivalent(
    a: *const VslDiagram,
    b: *const VslDiagram,
    calculus: VslCalculus,
    verdict: *mut bool,
    certificate: *mut *mut c_char,
) -> VslStatus {
    guard(|| {
        let e = equivalent(diagram(a, "a")?, diagram(b, "b")?, calculus.into())?;
        put(verdict, e.verdict, "verdict")?;
        if !certificate.is_null() {
            certificate.write(
                e.certificate
                    .map_or(ptr::null_mut(), |t| owned(t.to_string())),
            );
        }
        Ok(())
    })
}

/// Replays trace text from `initial`, checking every step and fingerprint,
/// and returns the final diagram.
///
/// # Safety
/// `initial` must be a live handle; `trace` a NUL-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_replay_trace(
    initial: *const VslDiagram,
    trace: *const c_char,
    out: *mut *mut VslDiagram,
) -> VslStatus {
    guard(|| {
        let t = Trace::parse(c_str(trace, "trace")?).map_err(Error::from)?;
        let end = replay_trace(diagram(initial, "initial")?, &t)?;
        put(out, handle(end), "out")
    })
}

/// Welded-concordance unknotting trace for a one-strand diagram.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vsl_welded_unknot_trace(
    d: *const VslDiagram,
    out: *mut *mut c_char,
) -> VslStatus {
    guard(|| {
        let t = welded_unknot_trace(diagram(d, "d")?)?;
        put(out, owned(t.to_string()), "out")
    })
}
