use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use vcwb_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Copies and frees a library-owned string.
fn take(s: *mut c_char) -> Option<String> {
    if s.is_null() {
        return None;
    }
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { vcwb_string_free(s) };
    Some(out)
}

#[test]
fn category_handle_round_trip() {
    let mut report = ptr::null_mut();
    let (tri, win) = (c("builtin:triv"), c("builtin:simples"));
    assert_eq!(unsafe { vcwb_complete(tri.as_ptr(), win.as_ptr(), false, 0, &mut report) }, VcwbStatus::Ok);
    let doc = take(unsafe { vcwb_report_output(report) }).unwrap();
    unsafe { vcwb_report_free(report) };

    let mut cat = ptr::null_mut();
    let text = c(&doc);
    assert_eq!(unsafe { vcwb_category_from_json(text.as_ptr(), &mut cat) }, VcwbStatus::Ok);
    assert_eq!(unsafe { vcwb_category_object_count(cat) }, 2);
    let mut verified = ptr::null_mut();
    assert_eq!(unsafe { vcwb_category_verify(cat, &mut verified) }, VcwbStatus::Ok);
    assert_eq!(unsafe { vcwb_report_verdict(verified) }, VcwbVerdict::Pass);
    assert_eq!(unsafe { vcwb_report_exit_code(verified) }, 0);
    let json = take(unsafe { vcwb_report_json(verified) }).unwrap();
    assert!(json.contains("vcat.associativity"));
    unsafe {
        vcwb_report_free(verified);
        vcwb_category_free(cat);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut report = ptr::null_mut();
    let nope = c("builtin:nope");
    assert_eq!(unsafe { vcwb_validate(VcwbKind::Base, nope.as_ptr(), ptr::null(), &mut report) }, VcwbStatus::Parse);
    assert!(report.is_null());
    assert!(take(vcwb_last_error()).unwrap().contains("builtin:nope"));

    assert_eq!(
        unsafe { vcwb_validate(VcwbKind::Base, ptr::null(), ptr::null(), &mut report) },
        VcwbStatus::NullArgument
    );
    let z4 = c("builtin:z4");
    assert_eq!(unsafe { vcwb_validate(VcwbKind::Base, z4.as_ptr(), ptr::null(), ptr::null_mut()) }, VcwbStatus::NullArgument);

    let bad = [0xffu8, 0];
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { vcwb_category_from_json(bad.as_ptr().cast(), &mut cat) }, VcwbStatus::InvalidUtf8);

    // A coverage gap is reported as a failing verdict, not a status.
    let (tri, win) = (c("builtin:triv"), c("builtin:dim-2"));
    assert_eq!(unsafe { vcwb_complete(tri.as_ptr(), win.as_ptr(), false, 1, &mut report) }, VcwbStatus::Ok);
    assert_eq!(unsafe { vcwb_report_verdict(report) }, VcwbVerdict::Fail);
    assert!(take(unsafe { vcwb_report_output(report) }).is_none());
    unsafe { vcwb_report_free(report) };
}

#[test]
fn check_tensored_matches_the_library() {
    let (cat, t) = (c("builtin:vhat-z4-1"), c("builtin:canonical"));
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { vcwb_check_tensored(cat.as_ptr(), t.as_ptr(), false, &mut report) }, VcwbStatus::Ok);
    let json = take(unsafe { vcwb_report_json(report) }).unwrap();
    unsafe { vcwb_report_free(report) };
    let lib = vcwb::workbench::cmd_check_tensored(
        &"builtin:vhat-z4-1".parse().unwrap(),
        &"builtin:canonical".parse().unwrap(),
        false,
    )
    .unwrap();
    assert_eq!(json, lib.report.to_json());
}

/// The directory holding the built cdylib: test binaries live in its `deps/`.
fn lib_dir() -> PathBuf {
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let here = Path::new(env!("CARGO_MANIFEST_DIR"));
    build_cdylib();
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(here.join("tests/smoke.c"))
        .arg("-I")
        .arg(here.join("include"))
        .arg("-L")
        .arg(lib_dir())
        .args(["-lvcwb_ffi", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).env("LD_LIBRARY_PATH", lib_dir()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("parse error"), "{stdout}");
}

/// `cargo test` only refreshes the rlib, so rebuild the shared library the C program links.
fn build_cdylib() {
    let dir = lib_dir();
    let mut cmd = Command::new(std::env::var("CARGO").unwrap_or_else(|_| "cargo".into()));
    cmd.args(["build", "-p", "vcwb-ffi", "--lib", "--target-dir"]).arg(dir.parent().unwrap());
    // Match the profile of this test binary so the core crate is not rebuilt.
    cmd.args(["--profile", if dir.ends_with("release") { "release" } else { "test" }]);
    assert!(cmd.status().unwrap().success());
}

fn which_cc() -> Result<String, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .map(str::to_owned)
        .ok_or(())
}
