use std::ffi::{CStr, CString};
use std::path::Path;
use std::ptr;

use qcousin_ffi::*;

fn last_error() -> String {
    let p = qc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn parse(text: &str) -> (QcStatus, *mut QcManifest) {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    let s = unsafe { qc_manifest_parse(c.as_ptr(), &mut m) };
    (s, m)
}

fn run_json(m: *const QcManifest) -> (QcStatus, i32, String) {
    let mut r = ptr::null_mut();
    let s = unsafe { qc_run(m, &mut r) };
    assert!(!r.is_null());
    let code = unsafe { qc_report_exit_code(r) };
    let j = unsafe { qc_report_json(r) };
    let text = unsafe { CStr::from_ptr(j) }.to_str().unwrap().to_string();
    unsafe {
        qc_string_free(j);
        qc_report_free(r);
    }
    (s, code, text)
}

#[test]
fn cousin_report_through_the_abi() {
    let (s, m) = parse("[problem]\nfield = generic_q\nn = 1\ncommand = cousin\nfiltration = 1, 0\n[parameters]\npole_max = 2\n");
    assert_eq!(s, QcStatus::Ok);
    let (s, code, json) = run_json(m);
    assert_eq!((s, code), (QcStatus::Ok, 0));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["results"]["levels"][1]["dims"], serde_json::json!([1, 3, 2]));
    unsafe { qc_manifest_free(m) };
}

#[test]
fn failing_verification_still_returns_a_report() {
    let (_, m) = parse("[problem]\nfield = generic_q\nn = 1\ncommand = verify\nchecks = l1\n");
    let (s, code, json) = run_json(m);
    assert_eq!((s, code), (QcStatus::VerificationFailed, 1));
    assert!(json.contains("x2^-1*x1"));
    unsafe { qc_manifest_free(m) };
}

#[test]
fn input_errors_set_the_message() {
    let (s, m) = parse("[problem]\nfield = generic_q\nn = 2\ncommand = cousin\nfiltration = 0, 2\n");
    assert_eq!(s, QcStatus::InputError);
    assert!(m.is_null());
    assert!(last_error().contains("filtration not weakly decreasing"));

    let (_, m) = parse("[problem]\nfield = generic_q\nn = 1\ncommand = oracle-compare\n");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qc_run(m, &mut r) }, QcStatus::InputError);
    assert!(r.is_null());
    assert_eq!(last_error(), "oracle supports q=1 only");
    unsafe { qc_manifest_free(m) };

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qc_manifest_parse(ptr::null(), &mut out) }, QcStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { qc_manifest_parse(bad.as_ptr().cast(), &mut out) }, QcStatus::InvalidUtf8);
}

#[test]
fn serialize_round_trips() {
    let (_, m) = parse("[problem]\nfield = q=1\nn = 1\ncommand = hilbert\n[module M]\nrelation = x1\n");
    let s = unsafe { qc_manifest_serialize(m) };
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    assert!(text.contains("field = rationals"));
    let (st, m2) = parse(&text);
    assert_eq!(st, QcStatus::Ok);
    unsafe {
        qc_string_free(s);
        qc_manifest_free(m);
        qc_manifest_free(m2);
    }
}

#[test]
fn module_hilbert() {
    let field = CString::new("generic_q").unwrap();
    let rel = CString::new("1 | x3").unwrap();
    let rels = [rel.as_ptr()];
    let degs = [0i64];
    let mut m = ptr::null_mut();
    let s = unsafe { qc_module_new(field.as_ptr(), 2, degs.as_ptr(), 1, rels.as_ptr(), 1, &mut m) };
    assert_eq!(s, QcStatus::Ok);
    let mut dims = [0usize; 4];
    assert_eq!(unsafe { qc_module_hilbert(m, 0, 3, dims.as_mut_ptr(), 4) }, QcStatus::Ok);
    assert_eq!(dims, [1, 2, 3, 4]);
    assert_eq!(unsafe { qc_module_hilbert(m, 0, 3, dims.as_mut_ptr(), 2) }, QcStatus::InputError);
    unsafe { qc_module_free(m) };

    let rel = CString::new("2 | x3").unwrap();
    let rels = [rel.as_ptr()];
    let s = unsafe { qc_module_new(field.as_ptr(), 2, degs.as_ptr(), 1, rels.as_ptr(), 1, &mut m) };
    assert_eq!(s, QcStatus::InputError);
    assert!(last_error().contains("relation column 1"));
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qcousin.h")).unwrap();
    for f in [
        "qc_manifest_parse",
        "qc_manifest_free",
        "qc_run",
        "qc_report_json",
        "qc_report_exit_code",
        "qc_report_free",
        "qc_module_new",
        "qc_module_hilbert",
        "qc_module_free",
        "qc_last_error",
        "qc_string_free",
        "QC_STATUS_VERIFICATION_FAILED",
    ] {
        assert!(h.contains(f), "{f} missing from header");
    }
}

/// Compiles the header as C when a compiler is around.
#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let src = std::env::temp_dir().join(format!("qcousin-header-{}.c", std::process::id()));
    std::fs::write(&src, "#include \"qcousin.h\"\nint main(void) { QcManifest *m = 0; return (int)QC_STATUS_OK + (m != 0); }\n").unwrap();
    let out = std::process::Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .output();
    let _ = std::fs::remove_file(&src);
    match out {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("no C compiler; skipped"),
    }
}
