use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use imw_ffi::*;

fn parse(text: &str) -> Result<*mut ImwMonoid, (ImwStatus, String)> {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    let status = unsafe { imw_monoid_parse_mtab(c.as_ptr(), &mut m) };
    if status == ImwStatus::Ok {
        Ok(m)
    } else {
        let msg = unsafe { CStr::from_ptr(imw_last_error_message()) }.to_str().unwrap().to_string();
        Err((status, msg))
    }
}

const M3: &str = "mtab v1\nn=3\nid=0\nlabels=1,e,t\n0 1 2\n1 1 2\n2 2 1\n";
const B21: &str = "mtab v1\nn=6\nid=0\n0 1 2 3 4 5\n1 5 3 5 1 5\n2 4 5 2 5 5\n3 1 5 3 5 5\n4 5 2 5 4 5\n5 5 5 5 5 5\n";

#[test]
fn parse_check_free() {
    let m = parse(M3).unwrap();
    unsafe {
        assert_eq!(imw_monoid_size(m), 3);
        let mut v = ImwVerdicts::default();
        assert_eq!(imw_monoid_check(m, &mut v), ImwStatus::Ok);
        assert_eq!(v, ImwVerdicts { inverse: 1, e_unitary: 1, f_inverse: 1, clifford: 1, weakly_schreier: 1 });
        let mut p = 0;
        assert_eq!(imw_monoid_mul(m, 2, 2, &mut p), ImwStatus::Ok);
        assert_eq!(p, 1);
        assert_eq!(imw_monoid_mul(m, 3, 0, &mut p), ImwStatus::Validation);
        imw_monoid_free(m);
    }
}

#[test]
fn brandt_is_not_e_unitary() {
    let m = parse(B21).unwrap();
    let mut v = ImwVerdicts::default();
    unsafe {
        assert_eq!(imw_monoid_check(m, &mut v), ImwStatus::Ok);
        imw_monoid_free(m);
    }
    assert_eq!((v.inverse, v.e_unitary, v.f_inverse, v.clifford), (1, 0, 0, 0));
}

#[test]
fn non_inverse_verdicts_are_not_applicable() {
    let m = parse("mtab v1\nn=3\nid=0\n0 1 2\n1 1 1\n2 1 1\n").unwrap();
    let mut v = ImwVerdicts::default();
    unsafe {
        assert_eq!(imw_monoid_check(m, &mut v), ImwStatus::Ok);
        imw_monoid_free(m);
    }
    assert_eq!(v, ImwVerdicts { inverse: 0, e_unitary: -1, f_inverse: -1, clifford: -1, weakly_schreier: -1 });
}

#[test]
fn error_codes_and_messages() {
    let (status, msg) = parse("mtab v1\nn=2\nid=0\n0 1\n1\n").unwrap_err();
    assert_eq!(status, ImwStatus::Syntax);
    assert!(msg.contains("line 5"), "{msg}");
    let (status, _) = parse("mtab v1\nn=2\nid=0\n0 0\n1 1\n").unwrap_err();
    assert_eq!(status, ImwStatus::Validation);
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(imw_monoid_parse_mtab(ptr::null(), &mut m), ImwStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(imw_monoid_parse_mtab(bad.as_ptr().cast(), &mut m), ImwStatus::InvalidUtf8);
        assert_eq!(imw_monoid_size(ptr::null()), 0);
        imw_monoid_free(ptr::null_mut());
        imw_string_free(ptr::null_mut());
    }
}

#[test]
fn from_table_and_iso() {
    let z2 = [0usize, 1, 1, 0];
    let ch2 = [0usize, 1, 1, 1];
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(imw_monoid_from_table(2, z2.as_ptr(), 0, &mut a), ImwStatus::Ok);
        assert_eq!(imw_monoid_from_table(2, ch2.as_ptr(), 0, &mut b), ImwStatus::Ok);
        let mut found = -1;
        let mut fwd = [9usize; 2];
        assert_eq!(imw_monoid_is_isomorphic(a, a, 12, &mut found, fwd.as_mut_ptr()), ImwStatus::Ok);
        assert_eq!((found, fwd), (1, [0, 1]));
        assert_eq!(imw_monoid_is_isomorphic(a, b, 12, &mut found, ptr::null_mut()), ImwStatus::Ok);
        assert_eq!(found, 0);
        assert_eq!(imw_monoid_is_isomorphic(a, a, 1, &mut found, ptr::null_mut()), ImwStatus::LimitExceeded);
        let bad = [0usize, 1, 1, 1];
        let mut c = ptr::null_mut();
        assert_eq!(imw_monoid_from_table(2, bad.as_ptr(), 1, &mut c), ImwStatus::Validation);
        imw_monoid_free(a);
        imw_monoid_free(b);
    }
}

#[test]
fn report_and_mtab_strings() {
    let m = parse(M3).unwrap();
    unsafe {
        let name = CString::new("M3").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(imw_monoid_report_json(m, name.as_ptr(), &mut s), ImwStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        imw_string_free(s);
        assert_eq!(json["name"], "M3");
        assert_eq!(json["verdicts"]["f_inverse"]["holds"], true);

        assert_eq!(imw_monoid_to_mtab(m, &mut s), ImwStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_string();
        imw_string_free(s);
        assert_eq!(text, format!("{M3}inv=0,1,2\n"));
        imw_monoid_free(m);
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/imw.h");
    for name in [
        "typedef struct ImwMonoid ImwMonoid;",
        "IMW_STATUS_SYNTAX = 3",
        "imw_monoid_parse_mtab(const char *text, struct ImwMonoid **out)",
        "imw_monoid_check",
        "imw_monoid_report_json",
        "imw_monoid_is_isomorphic",
        "void imw_string_free(char *s);",
        "const char *imw_last_error_message(void);",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles `examples/smoke.c` against the static library with the system
/// C compiler.
#[test]
fn c_program_links_against_staticlib() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/ffi-<hash> → target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libimw_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() || !lib.exists() {
        eprintln!("no C compiler or static library; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("size=3 inverse=1 e_unitary=1 f_inverse=1 clifford=1 weakly_schreier=1"), "{text}");
    assert!(text.contains("bad status=3"), "{text}");
    assert!(text.contains("iso=1 forward=0,1,2"), "{text}");
}
