use std::ffi::{c_char, CStr, CString};
use std::ptr;

use backstep_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe {
        bs_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn special_functions_round_trip() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(bs_bessel_i(2, 1.0, &mut v), BsStatus::Ok);
        assert!((v - 0.135_747_669_767_038_3).abs() < 1e-15);
        assert_eq!(bs_bessel_j1(2.0, &mut v), BsStatus::Ok);
        assert!((v - 0.576_724_807_756_873_6).abs() < 1e-15);
        assert_eq!(bs_erfi(1.0, &mut v), BsStatus::Ok);
        assert!((v - 1.650_425_758_797_542_8).abs() < 1e-14);
        assert_eq!(bs_bessel_i(3, 1.0, &mut v), BsStatus::InvalidArgument);
    }
    assert!(!last_error().is_empty());
}

#[test]
fn null_pointers_reported() {
    unsafe {
        assert_eq!(bs_erf(0.5, ptr::null_mut()), BsStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(bs_eigenvalue(ptr::null(), 0, &mut 0.0), BsStatus::NullPointer);
        assert_eq!(bs_simulate(ptr::null(), &mut ptr::null_mut()), BsStatus::NullPointer);
        bs_config_free(ptr::null_mut());
        bs_series_free(ptr::null_mut());
        bs_kernel_table_free(ptr::null_mut());
    }
}

#[test]
fn error_message_truncates_and_reports_length() {
    unsafe {
        assert_eq!(bs_erf(0.5, ptr::null_mut()), BsStatus::NullPointer);
        let full = bs_last_error_length();
        let mut small = [0 as c_char; 4];
        assert_eq!(bs_last_error_message(small.as_mut_ptr(), small.len()), full);
        assert_eq!(CStr::from_ptr(small.as_ptr()).to_bytes().len(), 3);
    }
}

#[test]
fn domain_and_resonance_statuses() {
    let mut v = 0.0;
    let resonant = BsParams { rho: 1.0, alpha: 0.5, beta: 0.5, gamma: -std::f64::consts::PI.powi(2) };
    unsafe {
        assert_eq!(bs_kernel_value(BsKernelKind::Ka, 0.2, 0.5, 1.0, &mut v), BsStatus::Domain);
        assert_eq!(bs_eigenvalue(&resonant, 0, &mut v), BsStatus::Resonance);
        assert!(last_error().contains("resonan") || last_error().contains("gamma"));
    }
}

#[test]
fn conditions_match_library() {
    let p = BsParams { rho: 0.5, alpha: 1.0, beta: 1.0, gamma: 1.0 };
    let mut c = BsCondition { lhs: 0.0, rhs: 0.0, margin: 0.0, satisfied: false };
    unsafe {
        assert_eq!(bs_check_observer2(5.0, &p, &mut c), BsStatus::Ok);
    }
    assert_eq!((c.lhs, c.rhs, c.margin, c.satisfied), (33.0, 1.0, 32.0, true));
}

#[test]
fn config_simulate_and_read_back() {
    let json = CString::new(
        r#"{"params":{"rho":0.5,"alpha":1,"beta":1,"gamma":1},
            "scenario":{"tag":"observer-two-meas","o2":5,"initial_w_hat":{"kind":"cos"}},
            "sim":{"t_final":0.2,"record_every":50},"grid":{"n_intervals":32}}"#,
    )
    .unwrap();
    let mut cfg = ptr::null_mut();
    let mut series = ptr::null_mut();
    let (mut records, mut nodes) = (0usize, 0usize);
    unsafe {
        assert_eq!(bs_config_from_json(json.as_ptr(), &mut cfg), BsStatus::Ok);
        assert_eq!(bs_simulate(cfg, &mut series), BsStatus::Ok);
        assert_eq!(bs_series_shape(series, &mut records, &mut nodes), BsStatus::Ok);
        assert_eq!((records, nodes), (5, 33));
        let mut ew = vec![0.0; records];
        assert_eq!(bs_series_column(series, BsSeriesColumn::NormEw, ew.as_mut_ptr(), records), BsStatus::Ok);
        assert!(ew[4] < ew[0]);
        let mut u = vec![0.0; records];
        assert_eq!(
            bs_series_column(series, BsSeriesColumn::Control, u.as_mut_ptr(), records),
            BsStatus::InvalidArgument
        );
        let (mut w, mut v) = (vec![0.0; nodes], vec![0.0; nodes]);
        assert_eq!(bs_series_state(series, 0, w.as_mut_ptr(), v.as_mut_ptr(), nodes), BsStatus::Ok);
        assert!((w[16] - 1.0).abs() < 1e-15);
        assert_eq!(
            bs_series_state(series, 99, w.as_mut_ptr(), v.as_mut_ptr(), nodes),
            BsStatus::InvalidArgument
        );
        bs_series_free(series);
        bs_config_free(cfg);
    }
}

#[test]
fn bad_config_is_a_config_error() {
    let json = CString::new(r#"{"params":{"rho":1},"scenario":{"tag":"open-loop"}}"#).unwrap();
    let mut cfg = ptr::null_mut();
    unsafe {
        assert_eq!(bs_config_from_json(json.as_ptr(), &mut cfg), BsStatus::Config);
    }
    assert!(cfg.is_null());
}

#[test]
fn kernel_table_handles() {
    let mut t = ptr::null_mut();
    let mut v = 0.0;
    unsafe {
        assert_eq!(bs_kernel_table_new(BsKernelKind::Kb, 2.0, 16, &mut t), BsStatus::Ok);
        assert_eq!(bs_kernel_table_get(t, 4, 4, &mut v), BsStatus::Ok);
        assert!((v + 0.25).abs() < 1e-15);
        assert_eq!(bs_kernel_table_get(t, 4, 2, &mut v), BsStatus::InvalidArgument);
        assert_eq!(bs_kernel_table_l2_norm(t, &mut v), BsStatus::Ok);
        assert!(v > 0.0);
        bs_kernel_table_free(t);
    }
}

/// Compiles `tests/c/smoke.c` against the generated header and the static
/// library, then runs it.
#[test]
fn c_program_links_and_runs() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/<test binary>
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libbackstep_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let status = std::process::Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler (`cc`) is required");
    assert!(status.success());
    let run = std::process::Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
