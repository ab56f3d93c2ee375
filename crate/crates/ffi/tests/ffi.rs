use std::f64::consts::{PI, TAU};
use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use blochprop_ffi::*;

const X: BpVec3 = BpVec3 {
    x: 1.0,
    y: 0.0,
    z: 0.0,
};
const UNIT: BpEuler = BpEuler {
    phi: 1.0,
    theta: 1.0,
    psi: 1.0,
};
const PROBE: BpEuler = BpEuler {
    phi: 0.0,
    theta: 0.2,
    psi: 0.0,
};

fn last_error() -> String {
    unsafe { CStr::from_ptr(bp_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn period_and_errors() {
    let mut t = 0.0;
    assert_eq!(unsafe { bp_period(UNIT, &mut t) }, BpStatus::Ok);
    assert!((t - TAU / 5f64.sqrt()).abs() < 1e-15);
    assert_eq!(last_error(), "");

    let zero = BpEuler::default();
    assert_eq!(
        unsafe { bp_period(zero, &mut t) },
        BpStatus::DegenerateRotation
    );
    assert!(last_error().contains("degenerate"));
    assert_eq!(
        unsafe { bp_period(UNIT, ptr::null_mut()) },
        BpStatus::NullPointer
    );
}

#[test]
fn matrices() {
    let mut m = BpMat3::default();
    let step = BpEuler {
        phi: 0.0,
        theta: 0.2,
        psi: 0.0,
    };
    assert_eq!(unsafe { bp_euler_matrix(step, &mut m) }, BpStatus::Ok);
    let (s, c) = 0.2f64.sin_cos();
    let want = [c, 0.0, -s, 0.0, 1.0, 0.0, s, 0.0, c];
    for (a, b) in m.m.iter().zip(want) {
        assert!((a - b).abs() < 1e-15);
    }

    assert_eq!(unsafe { bp_sp_general(0.0, UNIT, &mut m) }, BpStatus::Ok);
    assert_eq!(m.m, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
    let nan = BpEuler {
        phi: f64::NAN,
        ..UNIT
    };
    assert_eq!(
        unsafe { bp_sp_general(1.0, nan, &mut m) },
        BpStatus::NonFinite
    );

    let mut v = BpVec3::default();
    assert_eq!(unsafe { bp_rotate_euler(X, step, &mut v) }, BpStatus::Ok);
    assert!((v.x - c).abs() < 1e-15 && (v.z + s).abs() < 1e-15);
    let long = BpVec3 { x: 2.0, ..X };
    assert_eq!(
        unsafe { bp_rotate_euler(long, step, &mut v) },
        BpStatus::NormViolation
    );
}

#[test]
fn series_handle_lifecycle() {
    let step = BpEuler {
        phi: PI / 100.0,
        theta: PI / 100.0,
        psi: PI / 100.0,
    };
    let mut series: *mut BpSeries = ptr::null_mut();
    let status = unsafe { bp_simulate(BpPipeline::Su2, X, PROBE, step, 200, &mut series) };
    assert_eq!(status, BpStatus::Ok);
    assert_eq!(unsafe { bp_series_len(series) }, 201);

    let mut first = BpSample::default();
    assert_eq!(
        unsafe { bp_series_sample(series, 0, &mut first) },
        BpStatus::Ok
    );
    assert_eq!(first.delta_az, 0.0);
    assert!((first.delta_el - 0.2).abs() < 1e-15);
    assert_eq!(
        unsafe { bp_series_sample(series, 201, &mut first) },
        BpStatus::OutOfRange
    );
    unsafe { bp_series_free(series) };

    assert_eq!(unsafe { bp_series_len(ptr::null()) }, 0);
    unsafe { bp_series_free(ptr::null_mut()) };

    let tilted = BpEuler {
        phi: 0.1,
        theta: 0.2,
        psi: 0.3,
    };
    let status = unsafe { bp_simulate(BpPipeline::Closed, X, PROBE, tilted, 5, &mut series) };
    assert_eq!(status, BpStatus::OutsideGeneratorFamily);
    assert!(series.is_null());
}

#[test]
fn closed_form_and_analysis() {
    let (mut az, mut el) = (0.0, 0.0);
    assert_eq!(
        unsafe { bp_delta_closed_form(X, PROBE, 0.0, UNIT, &mut az, &mut el) },
        BpStatus::Ok
    );
    assert_eq!(az, 0.0);
    assert!((el - 0.2).abs() < 1e-15);

    let mut best = BpExtremum::default();
    let status =
        unsafe { bp_find_extremum(BpTarget::Elevation, BpMode::Max, X, UNIT, 64, 42, &mut best) };
    assert_eq!(status, BpStatus::Ok);
    assert!((best.value - 2.0344424161175363).abs() < 1e-3, "{best:?}");
    let err = BpEuler {
        phi: best.eps_x,
        theta: best.eps_y,
        psi: best.eps_z,
    };
    assert_eq!(
        unsafe { bp_delta_closed_form(X, err, best.t, UNIT, &mut az, &mut el) },
        BpStatus::Ok
    );
    assert_eq!(el, best.value);
    let status =
        unsafe { bp_find_extremum(BpTarget::Elevation, BpMode::Max, X, UNIT, 0, 42, &mut best) };
    assert_eq!(status, BpStatus::InvalidArgument);

    let mut avg = 0.0;
    assert_eq!(
        unsafe { bp_time_averaged_error(BpTarget::Elevation, X, PROBE, UNIT, &mut avg) },
        BpStatus::Ok
    );
    assert!(avg > 0.0 && avg < best.value);

    let mut period = 0.0;
    assert_eq!(
        unsafe { bp_estimate_period(BpTarget::Azimuth, X, PROBE, UNIT, &mut period) },
        BpStatus::Ok
    );
    assert!((period - TAU / 5f64.sqrt()).abs() < 1e-6);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(bp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn include_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(include_dir().join("blochprop.h")).unwrap();
    for name in [
        "bp_last_error_message",
        "bp_version",
        "bp_euler_matrix",
        "bp_rotate_euler",
        "bp_sp_general",
        "bp_period",
        "bp_delta_closed_form",
        "bp_simulate",
        "bp_series_len",
        "bp_series_sample",
        "bp_series_free",
        "bp_find_extremum",
        "bp_time_averaged_error",
        "bp_estimate_period",
        "typedef struct BpSeries BpSeries;",
        "BP_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles and runs a C program against the header and the static library
/// when a C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libblochprop_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("bp_smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-D_DEFAULT_SOURCE")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(include_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.contains("period 2.809925892416"), "{stdout}");
    assert!(stdout.contains("error degenerate rotation"), "{stdout}");
    assert!(stdout.contains("samples 201 first_el 0.200000"), "{stdout}");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
        {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
