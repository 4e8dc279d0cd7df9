use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use nilalg_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    nilalg_string_free(s);
    out
}

#[test]
fn handle_lifecycle_and_queries() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(nilalg_ideal_new(3, 0, &mut h), NilalgStatus::Ok);
        let mut b = false;
        assert_eq!(
            nilalg_ideal_contains(h, cstr("x1^3").as_ptr(), &mut b),
            NilalgStatus::Ok
        );
        assert!(b);
        assert_eq!(
            nilalg_ideal_contains(h, cstr("x1^2.x2").as_ptr(), &mut b),
            NilalgStatus::Ok
        );
        assert!(!b);
        let mut q = 0usize;
        let delta = [1u32, 1];
        assert_eq!(
            nilalg_ideal_quotient_dimension(h, delta.as_ptr(), 2, &mut q),
            NilalgStatus::Ok
        );
        assert_eq!(q, 2);
        let mut s = ptr::null_mut();
        assert_eq!(
            nilalg_ideal_reduce(h, cstr("x1^3 + x2").as_ptr(), &mut s),
            NilalgStatus::Ok
        );
        assert_eq!(take(s), "x2");
        let mut c = 0u32;
        assert_eq!(
            nilalg_nilpotency_degree(h, 2, 10, &mut c, ptr::null_mut()),
            NilalgStatus::Ok
        );
        assert_eq!(c, 6);
        assert_eq!(
            nilalg_equiv_zero(h, cstr("x1^3").as_ptr(), NilalgOrder::Succ, &mut b),
            NilalgStatus::Ok
        );
        assert!(b);
        nilalg_ideal_free(h);
    }
}

#[test]
fn errors_carry_messages() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            nilalg_ideal_new(2, 6, &mut h),
            NilalgStatus::InvalidArgument
        );
        assert!(h.is_null());
        let msg = CStr::from_ptr(nilalg_last_error()).to_str().unwrap();
        assert!(msg.contains("characteristic"), "{msg}");
        let mut s = ptr::null_mut();
        assert_eq!(
            nilalg_canonicalize4(2, cstr("x1").as_ptr(), &mut s),
            NilalgStatus::Hypothesis
        );
        assert_eq!(
            nilalg_bounds_json(2, 3, 2, false, ptr::null_mut()),
            NilalgStatus::NullPointer
        );
        nilalg_ideal_free(ptr::null_mut());
        nilalg_string_free(ptr::null_mut());
    }
}

#[test]
fn bounds_and_canonical_forms() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(nilalg_bounds_json(2, 3, 2, false, &mut s), NilalgStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["best_upper"]["integer_bound"], "4");
        assert_eq!(
            nilalg_canonicalize4(0, cstr("x1^2.x2.x1^2").as_ptr(), &mut s),
            NilalgStatus::Ok
        );
        assert_eq!(take(s), "-x1^3.x2.x1 - x1.x2.x1^3");
    }
}

#[test]
fn header_is_current() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/nilalg.h")).unwrap();
    for name in [
        "nilalg_ideal_new",
        "nilalg_ideal_free",
        "nilalg_ideal_contains",
        "nilalg_ideal_reduce",
        "nilalg_ideal_quotient_dimension",
        "nilalg_nilpotency_degree",
        "nilalg_equiv_zero",
        "nilalg_canonicalize4",
        "nilalg_bounds_json",
        "nilalg_string_free",
        "nilalg_last_error",
        "nilalg_version",
        "typedef struct NilalgIdeal NilalgIdeal;",
        "NILALG_STATUS_GUARD = 4",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    // the static library is not produced by test builds
    let mut build = Command::new(env!("CARGO"));
    build
        .args(["build", "-p", "nilalg-ffi", "--lib", "--target-dir"])
        .arg(profile_dir.parent().unwrap());
    if profile_dir.ends_with("release") {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success());
    let lib = profile_dir.join("libnilalg_ffi.a");
    let out = profile_dir.join("nilalg_ffi_smoke");
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-I"])
        .arg(format!("{dir}/include"))
        .arg(format!("{dir}/tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
