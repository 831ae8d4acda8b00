use std::ffi::{CStr, CString};
use std::ptr;

use vslink_ffi::*;

const ONE_CHORD: &str = "gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1\ncomp s2: H1\n";
const SAME_LK: &str = "gsld 1\nstrands 2\nchord 1 +\nchord 2 -\ncomp s1: T1 H2\ncomp s2: H1 T2\n";
const MIXED: &str =
    "gsld 1\nstrands 2\nchord 1 +\nchord 2 -\nchord 3 +\ncomp s1: H2 T1 T3 H3\ncomp s2: T2 H1\n";

fn parse(text: &str) -> *mut VslDiagram {
    let c = CString::new(text).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_diagram_parse(c.as_ptr(), &mut d) },
        VslStatus::Ok
    );
    d
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { vsl_string_free(s) };
    out
}

fn serialize(d: *const VslDiagram) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vsl_diagram_serialize(d, &mut s) }, VslStatus::Ok);
    take(s)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vsl_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn lk(d: *const VslDiagram) -> Vec<i64> {
    let mut len = 0;
    let probe = unsafe { vsl_linking_vector(d, ptr::null_mut(), 0, &mut len) };
    let expected = if len == 0 {
        VslStatus::Ok
    } else {
        VslStatus::BufferTooSmall
    };
    assert_eq!(probe, expected);
    let mut buf = vec![0i64; len];
    assert_eq!(
        unsafe { vsl_linking_vector(d, buf.as_mut_ptr(), len, &mut len) },
        VslStatus::Ok
    );
    buf
}

#[test]
fn parse_serialize_round_trip() {
    let d = parse(ONE_CHORD);
    assert_eq!(serialize(d), ONE_CHORD);
    assert_eq!(
        unsafe { (vsl_diagram_strands(d), vsl_diagram_chords(d)) },
        (2, 1)
    );
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { vsl_diagram_clone(d, &mut c) }, VslStatus::Ok);
    unsafe { vsl_diagram_free(d) };
    assert_eq!(serialize(c), ONE_CHORD);
    unsafe { vsl_diagram_free(c) };
}

#[test]
fn errors_carry_status_and_message() {
    let bad = CString::new("gsld 1\nstrands 1\nchord 1 +\ncomp s1: T1\n").unwrap();
    let mut d = ptr::null_mut();
    let status = unsafe { vsl_diagram_parse(bad.as_ptr(), &mut d) };
    assert!(matches!(
        status,
        VslStatus::Parse | VslStatus::InvalidDiagram
    ));
    assert!(d.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(
        unsafe { vsl_diagram_parse(ptr::null(), &mut d) },
        VslStatus::NullArgument
    );
    assert!(last_error().contains("text"));
    let not_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { vsl_diagram_parse(not_utf8.as_ptr().cast(), &mut d) },
        VslStatus::InvalidUtf8
    );
    let ok = parse(ONE_CHORD);
    assert!(last_error().is_empty());
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_normalize(ok, VslCalculus::Virtual, &mut out, ptr::null_mut()) },
        VslStatus::Unsupported
    );
    assert!(out.is_null());
    unsafe {
        vsl_diagram_free(ok);
        vsl_diagram_free(ptr::null_mut());
        vsl_string_free(ptr::null_mut());
        assert_eq!(vsl_diagram_strands(ptr::null()), 0);
    }
}

#[test]
fn linking_vector_and_standard_form() {
    let d = parse(MIXED);
    let v = lk(d);
    assert_eq!(v, vec![1, -1]);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_standard_form(2, v.as_ptr(), v.len(), &mut s) },
        VslStatus::Ok
    );
    assert_eq!(lk(s), v);
    let mut wrong = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_standard_form(3, v.as_ptr(), v.len(), &mut wrong) },
        VslStatus::Unsupported
    );
    let mut empty = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_standard_form(1, ptr::null(), 0, &mut empty) },
        VslStatus::Ok
    );
    assert_eq!(lk(empty), Vec::<i64>::new());
    unsafe {
        vsl_diagram_free(d);
        vsl_diagram_free(s);
        vsl_diagram_free(empty);
    }
}

#[test]
fn normalize_returns_replayable_trace() {
    let d = parse(MIXED);
    for cal in [VslCalculus::Unwelded, VslCalculus::Cobordism] {
        let (mut n, mut t) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            unsafe { vsl_normalize(d, cal, &mut n, &mut t) },
            VslStatus::Ok
        );
        let trace = CString::new(take(t)).unwrap();
        let mut end = ptr::null_mut();
        assert_eq!(
            unsafe { vsl_replay_trace(d, trace.as_ptr(), &mut end) },
            VslStatus::Ok
        );
        assert_eq!(serialize(end), serialize(n));
        assert_eq!(lk(n), lk(d));
        unsafe {
            vsl_diagram_free(n);
            vsl_diagram_free(end);
        }
    }
    unsafe { vsl_diagram_free(d) };
}

#[test]
fn equivalence_and_certificates() {
    let (a, b) = (parse(MIXED), parse(SAME_LK));
    let mut verdict = false;
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_equivalent(a, b, VslCalculus::Unwelded, &mut verdict, &mut cert) },
        VslStatus::Ok
    );
    assert!(verdict);
    let cert = CString::new(take(cert)).unwrap();
    let mut end = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_replay_trace(a, cert.as_ptr(), &mut end) },
        VslStatus::Ok
    );
    assert_eq!(lk(end), lk(b));

    let mut zero = ptr::null_mut();
    assert_eq!(unsafe { vsl_diagram_empty(2, &mut zero) }, VslStatus::Ok);
    let mut none = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_equivalent(a, zero, VslCalculus::Cobordism, &mut verdict, &mut none) },
        VslStatus::Ok
    );
    assert!(!verdict && none.is_null());
    let mut one = ptr::null_mut();
    assert_eq!(unsafe { vsl_diagram_empty(1, &mut one) }, VslStatus::Ok);
    assert_eq!(
        unsafe {
            vsl_equivalent(
                a,
                one,
                VslCalculus::Cobordism,
                &mut verdict,
                ptr::null_mut(),
            )
        },
        VslStatus::Unsupported
    );
    unsafe {
        for d in [a, b, end, zero, one] {
            vsl_diagram_free(d);
        }
    }
}

#[test]
fn tampered_trace_is_rejected() {
    let knot = parse("gsld 1\nstrands 1\nchord 1 +\nchord 2 +\ncomp s1: T1 T2 H1 H2\n");
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { vsl_welded_unknot_trace(knot, &mut t) },
        VslStatus::Ok
    );
    let text = take(t);
    let mut end = ptr::null_mut();
    let good = CString::new(text.clone()).unwrap();
    assert_eq!(
        unsafe { vsl_replay_trace(knot, good.as_ptr(), &mut end) },
        VslStatus::Ok
    );
    assert_eq!(serialize(end), "gsld 1\nstrands 1\ncomp s1:\n");
    let cut: Vec<&str> = text.lines().filter(|l| !l.starts_with("SAD")).collect();
    let bad = CString::new(cut.join("\n") + "\n").unwrap();
    let mut other = ptr::null_mut();
    let status = unsafe { vsl_replay_trace(knot, bad.as_ptr(), &mut other) };
    assert!(
        matches!(status, VslStatus::Trace | VslStatus::Move),
        "{status:?}"
    );
    assert!(other.is_null());
    unsafe {
        vsl_diagram_free(knot);
        vsl_diagram_free(end);
    }
}
