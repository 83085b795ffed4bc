use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use pgonal::format::{envelope, problem_to_json, to_canonical_string, Problem};
use pgonal::selftest::worked_p3;
use pgonal_ffi::*;

fn problem_text() -> CString {
    let f = worked_p3();
    let pr = Problem {
        curve: f.curve,
        context: f.context,
        assume_unique: f.assume_unique,
        advisor: None,
    };
    CString::new(to_canonical_string(&envelope("problem", problem_to_json(&pr)))).unwrap()
}

fn last_error() -> Option<String> {
    let p = pgonal_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn descend_serialize_reparse_verify() {
    unsafe {
        let mut pr = ptr::null_mut();
        assert_eq!(pgonal_problem_parse(problem_text().as_ptr(), 0, &mut pr), PgonalStatus::Ok);
        let mut g = 0i64;
        assert_eq!(pgonal_problem_genus(pr, &mut g), PgonalStatus::Ok);
        assert_eq!(g, 2);

        let mut r = ptr::null_mut();
        assert_eq!(pgonal_descend(pr, 0, 0, &mut r), PgonalStatus::Ok);
        assert!(last_error().is_none());
        let mut d = 0usize;
        assert_eq!(pgonal_result_degree(r, &mut d), PgonalStatus::Ok);
        assert_eq!(d, 1);

        let mut s = ptr::null_mut();
        assert_eq!(pgonal_result_to_json(r, &mut s), PgonalStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(pgonal_result_parse(s, 0, &mut back), PgonalStatus::Ok);
        assert_eq!(pgonal_verify(pr, back), PgonalStatus::Ok);

        pgonal_string_free(s);
        pgonal_result_free(back);
        pgonal_result_free(r);
        pgonal_problem_free(pr);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut pr = ptr::null_mut();
        let bad = CString::new("{\"format\": \"pgonal/1\",\n\"kind\": \"problem\",\n\"payload\": [").unwrap();
        assert_eq!(pgonal_problem_parse(bad.as_ptr(), 0, &mut pr), PgonalStatus::ParseError);
        assert!(pr.is_null());
        assert!(last_error().unwrap().starts_with("ParseError"));

        assert_eq!(pgonal_problem_parse(ptr::null(), 0, &mut pr), PgonalStatus::NullPointer);
        assert_eq!(pgonal_descend(ptr::null(), 0, 0, &mut ptr::null_mut()), PgonalStatus::NullPointer);

        let mut unique = true;
        assert_eq!(pgonal_classify(3, 7, &mut unique), PgonalStatus::Ok);
        assert!(!unique);
        assert!(last_error().is_none());
        assert_eq!(pgonal_classify(3, 4, &mut unique), PgonalStatus::InvalidInput);
        assert!(last_error().unwrap().contains("not prime"));

        // freeing null is a no-op
        pgonal_problem_free(ptr::null_mut());
        pgonal_result_free(ptr::null_mut());
        pgonal_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_per_thread() {
    let mut unique = false;
    assert_eq!(unsafe { pgonal_classify(3, 9, &mut unique) }, PgonalStatus::InvalidInput);
    std::thread::spawn(|| assert!(last_error().is_none())).join().unwrap();
    assert!(last_error().is_some());
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(pgonal_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/pgonal.h");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["pgonal_descend", "pgonal_verify", "pgonal_last_error", "PGONAL_STATUS_SPLITTING_FAILED"] {
        assert!(text.contains(f), "{f} missing from header");
    }
}
