//! End-to-end tests of the `qspec` binary: JSON interfaces, exit codes and
//! byte-level determinism.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn qspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn sspec_reports_spheres() {
    let dir = TempDir::new().unwrap();
    let m = write_file(
        dir.path(),
        "diag.json",
        r#"{"n":2,"entries":[[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[3,0,0,0]]]}"#,
    );
    let v = stdout_json(&qspec(&["sspec", &m]));
    let spheres = v["spheres"].as_array().unwrap();
    assert_eq!(spheres.len(), 2);
    assert!((spheres[0]["u"].as_f64().unwrap() - 0.0).abs() < 1e-10);
    assert!((spheres[0]["v"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(spheres[0]["mult"], 1);
    assert!((spheres[1]["u"].as_f64().unwrap() - 3.0).abs() < 1e-10);
}

#[test]
fn resolvent_scalar_value() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "i.json", r#"{"n":1,"entries":[[[0,1,0,0]]]}"#);
    for side in ["left", "right"] {
        let v = stdout_json(&qspec(&["resolvent", "--side", side, "--s", "2,0,0,0", &m]));
        let entry = &v["entries"][0][0];
        assert!((entry[0].as_f64().unwrap() - 0.4).abs() < 1e-12);
        assert!((entry[1].as_f64().unwrap() - 0.2).abs() < 1e-12);
    }
    // a point on the S-spectrum is a domain error
    let out = qspec(&["resolvent", "--side", "left", "--s", "0,1,0,0", &m]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resolvent_check_residuals() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "zero.json", r#"{"n":1,"entries":[[[0,0,0,0]]]}"#);
    let v = stdout_json(&qspec(&["resolvent-check", "--s", "1,0,0,0", "--p", "2,0,0,0", &m]));
    assert!(v["residual_eq21"].as_f64().unwrap() <= 1e-14);
    assert!(v["residual_eq22"].as_f64().unwrap() <= 1e-14);
}

#[test]
fn riesz_projector_output() {
    let dir = TempDir::new().unwrap();
    let m = write_file(
        dir.path(),
        "mix.json",
        r#"{"n":2,"entries":[[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[3,0,0,0]]]}"#,
    );
    let v = stdout_json(&qspec(&["riesz", &m, "--select", "0"]));
    assert!(v["idem"].as_f64().unwrap() < 1e-7);
    assert!(v["comm"].as_f64().unwrap() < 1e-7);
    let p00 = &v["matrix"]["entries"][0][0];
    assert!((p00[0].as_f64().unwrap() - 1.0).abs() < 1e-7);
    let p11 = &v["matrix"]["entries"][1][1];
    assert!(p11[0].as_f64().unwrap().abs() < 1e-7);
    // custom plane and node count still work
    let v = stdout_json(&qspec(&["riesz", &m, "--select", "0", "--plane", "0,1,0", "--nodes", "128"]));
    assert!((v["matrix"]["entries"][0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn decompose_angles() {
    let dir = TempDir::new().unwrap();
    // e^{i pi/4}
    let c = std::f64::consts::FRAC_PI_4.cos();
    let m = write_file(
        dir.path(),
        "u.json",
        &format!(r#"{{"n":1,"entries":[[[{c},{c},0,0]]]}}"#),
    );
    let v = stdout_json(&qspec(&["decompose", &m]));
    let angles = v["angles"].as_array().unwrap();
    assert_eq!(angles.len(), 2);
    assert!((angles[0].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
    assert_eq!(v["multiplicities"][0], 1);
    // non-unitary input is rejected
    let bad = write_file(dir.path(), "bad.json", r#"{"n":1,"entries":[[[2,0,0,0]]]}"#);
    assert_eq!(qspec(&["decompose", &bad]).status.code(), Some(2));
}

#[test]
fn measure_and_herglotz() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "i.json", r#"{"n":1,"entries":[[[0,1,0,0]]]}"#);
    let x = write_file(dir.path(), "x.json", r#"{"n":1,"entries":[[1,0,0,0]]}"#);
    let y = write_file(dir.path(), "y.json", r#"{"n":1,"entries":[[0,0,1,0]]}"#);

    let v = stdout_json(&qspec(&["measure", &m, "--x", &x]));
    assert_eq!(v["q_positive"], true);
    let atoms = v["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 2);
    assert!((atoms[0]["t"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    assert!((atoms[0]["w"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);

    // pairing measure with y
    let v = stdout_json(&qspec(&["measure", &m, "--x", &x, "--y", &y]));
    assert_eq!(v["atoms"].as_array().unwrap().len(), 2);

    let v = stdout_json(&qspec(&["herglotz", &m, "--x", &x, "--N", "6"]));
    assert_eq!(v["sequence"].as_array().unwrap().len(), 13);
    assert_eq!(v["psd"], true);
    assert!(v["min_eigenvalue"].as_f64().unwrap() >= -1e-10);
}

#[test]
fn funcalc_builtin_and_trig() {
    let dir = TempDir::new().unwrap();
    let m = write_file(dir.path(), "i.json", r#"{"n":1,"entries":[[[0,1,0,0]]]}"#);
    let v = stdout_json(&qspec(&["funcalc", &m, "--fn", "square"]));
    assert!((v["entries"][0][0][0].as_f64().unwrap() + 1.0).abs() < 1e-10);

    let coeffs = write_file(dir.path(), "c.json", r#"[[1,[1,0,0,0]]]"#);
    let v = stdout_json(&qspec(&["funcalc", &m, "--trig", &coeffs]));
    assert!((v["entries"][0][0][1].as_f64().unwrap() - 1.0).abs() < 1e-12);

    assert_eq!(qspec(&["funcalc", &m, "--fn", "nope"]).status.code(), Some(2));
    assert_eq!(qspec(&["funcalc", &m]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let first = qspec(&["verify", "--instances", "1", "--dim-cap", "2"]);
    assert_eq!(first.status.code(), Some(0));
    let second = qspec(&["verify", "--instances", "1", "--dim-cap", "2"]);
    assert_eq!(first.stdout, second.stdout, "verify output must be byte-identical");

    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(v["records"].as_array().unwrap().len() >= 34);
    for group in v["summary"].as_array().unwrap() {
        assert_eq!(group["pass"], true, "group {group}");
        assert!(group["max_residual"].as_f64().unwrap() <= group["tolerance"].as_f64().unwrap());
    }

    // under-resolved quadrature must fail with exit code 1
    let low = qspec(&["verify", "--instances", "1", "--dim-cap", "2", "--nodes", "16"]);
    assert_eq!(low.status.code(), Some(1));

    // invalid configuration is exit code 2
    let bad = qspec(&["verify", "--dim-cap", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn io_errors_exit_two() {
    let out = qspec(&["sspec", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let bad = write_file(dir.path(), "bad.json", r#"{"n":2,"entries":[[[1,0,0,0]]]}"#);
    assert_eq!(qspec(&["sspec", &bad]).status.code(), Some(2));
}
