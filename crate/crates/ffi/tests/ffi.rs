use std::ffi::CStr;
use std::ptr;

use valuation_lab_ffi::*;

const CUBE: [f64; 24] = [
    0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, //
    0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0,
];

fn cube() -> *mut VlBody {
    let mut body = ptr::null_mut();
    assert_eq!(
        unsafe { vl_body_from_vertices(CUBE.as_ptr(), 8, 3, &mut body) },
        VlStatus::Ok
    );
    assert!(!body.is_null());
    body
}

fn last_error() -> Option<String> {
    let p = vl_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn cube_functionals() {
    let body = cube();
    unsafe {
        let mut n = 0;
        assert_eq!(vl_body_dim(body, &mut n), VlStatus::Ok);
        assert_eq!(n, 3);
        let mut count = 0;
        assert_eq!(vl_body_vertex_count(body, &mut count), VlStatus::Ok);
        assert_eq!(count, 8);
        let mut verts = vec![0.0; count * n];
        assert_eq!(
            vl_body_vertices(body, verts.as_mut_ptr(), verts.len()),
            VlStatus::Ok
        );
        assert!(verts.iter().all(|&c| c == 0.0 || c == 1.0));

        let mut x = 0.0;
        assert_eq!(vl_body_volume(body, &mut x), VlStatus::Ok);
        assert!((x - 1.0).abs() < 1e-15);
        assert_eq!(vl_body_surface_area(body, &mut x), VlStatus::Ok);
        assert!((x - 6.0).abs() < 1e-14);

        let mut v3 = [0.0; 3];
        assert_eq!(vl_body_moment(body, v3.as_mut_ptr(), 3), VlStatus::Ok);
        assert!(v3.iter().all(|c| (c - 0.5).abs() < 1e-15), "{v3:?}");
        assert_eq!(vl_q1(body, v3.as_mut_ptr(), 3), VlStatus::Ok);
        assert!(v3.iter().all(|c| (c - 1.0).abs() < 1e-15), "{v3:?}");
        assert_eq!(vl_upsilon(body, 1, v3.as_mut_ptr(), 3), VlStatus::Ok);
        for c in v3 {
            assert!((c - 1.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(vl_xi(body, 1, v3.as_mut_ptr(), 3), VlStatus::Ok);
        assert!(v3.iter().all(|c| c.abs() < 1e-15));

        let mut len = 0;
        assert_eq!(vl_tensor_len(3, 2, &mut len), VlStatus::Ok);
        assert_eq!(len, 6);
        let mut psi2 = vec![0.0; len];
        assert_eq!(vl_psi(body, 2, psi2.as_mut_ptr(), len), VlStatus::Ok);
        // 1/2 ∫ x_i x_j over the unit cube: 1/6 on the diagonal, 1/8 off it
        let want = [1.0 / 6.0, 0.125, 0.125, 1.0 / 6.0, 0.125, 1.0 / 6.0];
        for (a, b) in psi2.iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{psi2:?}");
        }

        let u = [0.0, 0.0, 1.0];
        assert_eq!(
            vl_projected_volume(body, u.as_ptr(), 3, &mut x),
            VlStatus::Ok
        );
        assert!((x - 1.0).abs() < 1e-15);
        vl_body_free(body);
    }
}

#[test]
fn check_entry_point() {
    let body = cube();
    let mut res = VlCheckResult::default();
    unsafe {
        assert_eq!(
            vl_check_vector_cauchy(body, 20_000, 42, &mut res),
            VlStatus::Ok
        );
        assert!(res.pass && res.max_std_error > 0.0 && res.tolerance > 0.0);
        assert_eq!(
            vl_check_vector_cauchy(body, 3, 42, &mut res),
            VlStatus::InvalidArgument
        );
        vl_body_free(body);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let flat = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        let mut body = ptr::null_mut();
        assert_eq!(
            vl_body_from_vertices(flat.as_ptr(), 3, 3, &mut body),
            VlStatus::Degenerate
        );
        assert!(body.is_null());
        assert!(
            last_error().unwrap().contains("degenerate"),
            "{:?}",
            last_error()
        );

        assert_eq!(
            vl_body_from_vertices(ptr::null(), 3, 3, &mut body),
            VlStatus::NullPointer
        );
        assert_eq!(
            vl_body_from_vertices(flat.as_ptr(), 1, 9, &mut body),
            VlStatus::Unsupported
        );
        let nan = [f64::NAN, 0.0];
        assert_eq!(
            vl_body_from_vertices(nan.as_ptr(), 1, 2, &mut body),
            VlStatus::InvalidArgument
        );

        let cube = cube();
        assert!(last_error().is_none());
        let mut out = [0.0; 2];
        assert_eq!(vl_q1(cube, out.as_mut_ptr(), 2), VlStatus::BufferSize);
        assert_eq!(
            vl_upsilon(cube, 9, out.as_mut_ptr(), 2),
            VlStatus::Unsupported
        );
        let mut x = 0.0;
        let u = [1.0, 1.0, 0.0];
        assert_eq!(
            vl_projected_volume(cube, u.as_ptr(), 3, &mut x),
            VlStatus::InvalidArgument
        );
        assert_eq!(vl_body_volume(ptr::null(), &mut x), VlStatus::NullPointer);
        vl_body_free(cube);
        vl_body_free(ptr::null_mut());
    }
}

#[test]
fn constants() {
    assert!((vl_kappa(2) - std::f64::consts::PI).abs() < 1e-15);
    assert_eq!(vl_kappa(0), 1.0);
    let v = unsafe { CStr::from_ptr(vl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles and runs a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("valuation_lab.h").exists());
    // the test binary lives in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libvaluation_lab_ffi.a");
    // integration tests link the rlib only; build the static archive explicitly
    let mut build = std::process::Command::new(env!("CARGO"));
    build
        .args(["build", "--quiet", "-p", "valuation-lab-ffi", "--lib"])
        .arg("--target-dir")
        .arg(profile_dir.parent().unwrap());
    if profile_dir.file_name() == Some(std::ffi::OsStr::new("release")) {
        build.arg("--release");
    }
    assert!(
        build.status().unwrap().success(),
        "building the static library failed"
    );
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );

    let out_dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe_path = out_dir.join("vl_smoke");
    let status = std::process::Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe_path)
        .status()
        .expect("a C compiler is required");
    assert!(status.success());
    let run = std::process::Command::new(&exe_path).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
