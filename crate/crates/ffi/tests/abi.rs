use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ghostsim_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = ghostsim_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn preset(name: &str) -> *mut GhostsimScenario {
    let mut s = ptr::null_mut();
    let st = unsafe { ghostsim_scenario_from_preset(c(name).as_ptr(), &mut s) };
    assert_eq!(st, GhostsimStatus::Ok);
    s
}

#[test]
fn fig4_point_profile_through_the_abi() {
    let s = preset("fig4");
    let mut p = ptr::null_mut();
    let st = unsafe {
        ghostsim_profile_compute(
            s,
            GhostsimPlane::Ghost,
            GhostsimDetector::Point,
            GhostsimMethod::Default,
            0,
            0.0,
            &mut p,
        )
    };
    assert_eq!(st, GhostsimStatus::Ok);
    let n = unsafe { ghostsim_profile_len(p) };
    assert_eq!(n, 2048);
    let mut x = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = 0.0;
    unsafe {
        assert_eq!(
            ghostsim_profile_copy_x(p, x.as_mut_ptr(), n),
            GhostsimStatus::Ok
        );
        assert_eq!(
            ghostsim_profile_copy_values(p, v.as_mut_ptr(), n),
            GhostsimStatus::Ok
        );
        assert_eq!(ghostsim_profile_fwhm(p, &mut w), GhostsimStatus::Ok);
    }
    assert!((w - 155.46e-6).abs() < 0.05e-6, "{w}");
    assert!((x[0] + x[n - 1]).abs() < 1e-15);
    assert_eq!(v.iter().cloned().fold(0.0, f64::max), 1.0);

    let st = unsafe { ghostsim_profile_copy_values(p, v.as_mut_ptr(), n - 1) };
    assert_eq!(st, GhostsimStatus::BufferTooSmall);
    assert!(last_error().contains("2048"));
    unsafe {
        ghostsim_profile_free(p);
        ghostsim_scenario_free(s);
    }
}

#[test]
fn set_and_get_follow_override_rules() {
    let s = preset("custom");
    let mut m = 0.0;
    unsafe {
        assert_eq!(
            ghostsim_scenario_set(s, c("d2").as_ptr(), c("0.149").as_ptr()),
            GhostsimStatus::Ok
        );
        assert_eq!(
            ghostsim_scenario_set(s, c("d3").as_ptr(), c("0.649").as_ptr()),
            GhostsimStatus::Ok
        );
        assert_eq!(
            ghostsim_scenario_get(s, c("m").as_ptr(), &mut m),
            GhostsimStatus::Ok
        );
    }
    assert!((m - 0.404).abs() < 1e-12);

    // A rejected override leaves the handle untouched.
    let st = unsafe { ghostsim_scenario_set(s, c("w").as_ptr(), c("-1").as_ptr()) };
    assert_eq!(st, GhostsimStatus::Invariant);
    assert!(last_error().contains('w'));
    let mut w = 0.0;
    unsafe { ghostsim_scenario_get(s, c("w").as_ptr(), &mut w) };
    assert_eq!(w, 160e-6);

    let mut slit = 0.0;
    unsafe { ghostsim_scenario_get(s, c("signal_slit").as_ptr(), &mut slit) };
    assert!(slit.is_nan());
    let st = unsafe { ghostsim_scenario_get(s, c("zeta").as_ptr(), &mut slit) };
    assert_eq!(st, GhostsimStatus::InvalidArgument);
    unsafe { ghostsim_scenario_free(s) };
}

#[test]
fn kv_text_round_trip() {
    let text = ghostsim::geometry::Preset::Fig6Slit
        .scenario()
        .to_kv_string();
    let mut s = ptr::null_mut();
    let st = unsafe { ghostsim_scenario_from_kv(c(&text).as_ptr(), &mut s) };
    assert_eq!(st, GhostsimStatus::Ok);
    let mut slit = 0.0;
    unsafe { ghostsim_scenario_get(s, c("signal_slit").as_ptr(), &mut slit) };
    assert_eq!(slit, 160e-6);
    unsafe { ghostsim_scenario_free(s) };
}

#[test]
fn errors_are_codes_not_crashes() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(
            ghostsim_scenario_from_preset(ptr::null(), &mut s),
            GhostsimStatus::NullPointer
        );
        assert_eq!(
            ghostsim_scenario_from_preset(c("fig7").as_ptr(), &mut s),
            GhostsimStatus::InvalidArgument
        );
        assert!(s.is_null());
        assert_eq!(
            ghostsim_scenario_from_kv(c("lambda 1").as_ptr(), &mut s),
            GhostsimStatus::InvalidArgument
        );
        assert_eq!(ghostsim_profile_len(ptr::null()), 0);
        ghostsim_scenario_free(ptr::null_mut());
        ghostsim_profile_free(ptr::null_mut());
    }
    let s = preset("fig3_noslit");
    let mut p = ptr::null_mut();
    unsafe {
        let st = ghostsim_profile_compute(
            s,
            GhostsimPlane::Ghost,
            GhostsimDetector::Point,
            GhostsimMethod::Fresnel,
            0,
            0.0,
            &mut p,
        );
        assert_eq!(st, GhostsimStatus::InvalidArgument);
        let st = ghostsim_profile_compute(
            s,
            GhostsimPlane::Ghost,
            GhostsimDetector::Point,
            GhostsimMethod::Default,
            4,
            0.0,
            &mut p,
        );
        assert_eq!(st, GhostsimStatus::Numerics);
        assert!(last_error().contains("points"));
        assert!(p.is_null());
        ghostsim_scenario_free(s);
    }
    let v = unsafe { CStr::from_ptr(ghostsim_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles and runs a C program against the generated header and the
/// static library.
#[test]
fn header_works_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/ghostsim.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "ghostsim_profile_compute",
        "ghostsim_last_error_message",
        "GHOSTSIM_STATUS_OK",
    ] {
        assert!(text.contains(f), "{f}");
    }
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; compiled check not run");
        return;
    }
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libghostsim_ffi.a");
    assert!(lib.exists(), "{}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "ghostsim.h"
int main(void) {
    GhostsimScenario *s = NULL;
    GhostsimProfile *p = NULL;
    double w = 0.0;
    if (ghostsim_scenario_from_preset("fig4", &s) != GHOSTSIM_STATUS_OK) return 1;
    if (ghostsim_scenario_set(s, "w", "-1") != GHOSTSIM_STATUS_INVARIANT) return 2;
    if (ghostsim_last_error_message() == NULL) return 3;
    if (ghostsim_profile_compute(s, GHOSTSIM_PLANE_GHOST, GHOSTSIM_DETECTOR_POINT,
                                 GHOSTSIM_METHOD_DEFAULT, 401, 4e-4, &p) != GHOSTSIM_STATUS_OK) return 4;
    if (ghostsim_profile_len(p) != 401) return 5;
    if (ghostsim_profile_fwhm(p, &w) != GHOSTSIM_STATUS_OK) return 6;
    printf("%.6e\n", w);
    ghostsim_profile_free(p);
    ghostsim_scenario_free(s);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let w: f64 = String::from_utf8_lossy(&run.stdout).trim().parse().unwrap();
    assert!((w - 155.5e-6).abs() < 1e-6, "{w}");
}
