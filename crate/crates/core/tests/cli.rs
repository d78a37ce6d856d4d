//! End-to-end runs of the `qspectra` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qspectra::io::save;
use qspectra::{QMatrix, Quaternion};
use serde_json::Value;

fn qspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspectra"))
        .args(args)
        .env_remove("QSPECTRA_SEED")
        .output()
        .expect("binary runs")
}

fn write_matrix(dir: &Path, name: &str, a: &QMatrix) -> PathBuf {
    let path = dir.join(name);
    save(a, &path).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn diag_i_3() -> QMatrix {
    QMatrix::from_diag(&[Quaternion::I, Quaternion::real(3.0)])
}

#[test]
fn spectrum_of_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_matrix(dir.path(), "a.json", &diag_i_3());
    let v = stdout_json(&qspectra(&["spectrum", "-i", input.to_str().unwrap()]));
    let spheres = v["spheres"].as_array().unwrap();
    assert_eq!(spheres.len(), 2);
    assert_eq!(
        (spheres[0]["re"].as_f64(), spheres[0]["rho"].as_f64()),
        (Some(0.0), Some(1.0))
    );
    assert_eq!(
        (spheres[1]["re"].as_f64(), spheres[1]["rho"].as_f64()),
        (Some(3.0), Some(0.0))
    );
}

#[test]
fn riesz_projector_of_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_matrix(dir.path(), "a.json", &diag_i_3());
    let output = dir.path().join("p.json");
    let out = qspectra(&[
        "riesz",
        "-i",
        input.to_str().unwrap(),
        "-o",
        output.to_str().unwrap(),
        "--sphere",
        "0,1",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let p = &v["P"]["entries"];
    assert!((p[0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(p[1][1][0].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(v["diagnostics"]["rank"], 1);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = QMatrix::from_rows(vec![
        vec![Quaternion::new(1.0, 0.5, 0.0, -0.25), Quaternion::J],
        vec![Quaternion::real(0.3), Quaternion::new(-2.0, 0.0, 1.0, 0.0)],
    ])
    .unwrap();
    let input = write_matrix(dir.path(), "a.json", &a);
    for args in [
        vec!["decompose", "--sphere", "1,0"],
        vec!["funcalc", "--poly", "1,-2,1"],
        vec!["power", "--power", "3"],
    ] {
        let mut full = args.clone();
        full.extend(["-i", input.to_str().unwrap()]);
        let first = qspectra(&full);
        let second = qspectra(&full);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn csv_is_written_next_to_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_matrix(dir.path(), "a.json", &diag_i_3());
    let output = dir.path().join("spec.json");
    let out = qspectra(&[
        "spectrum",
        "-i",
        input.to_str().unwrap(),
        "-o",
        output.to_str().unwrap(),
        "--csv",
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("spec.csv")).unwrap();
    assert_eq!(
        csv,
        "re,rho\n0.0000000000000000e0,1.0000000000000000e0\n3.0000000000000000e0,0.0000000000000000e0\n"
    );
}

#[test]
fn non_isolated_sphere_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = QMatrix::from_diag(&[Quaternion::real(1.0), Quaternion::real(1.0 + 1e-7)]);
    let input = write_matrix(dir.path(), "a.json", &a);
    let out = qspectra(&["riesz", "-i", input.to_str().unwrap(), "--sphere", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotIsolated"));
}

#[test]
fn parse_and_io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":1,"entries":[[[1,2,3]]]}"#).unwrap();
    let out = qspectra(&["spectrum", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("ParseError") && err.contains("entry 0"),
        "{err}"
    );

    let missing = dir.path().join("missing.json");
    let out = qspectra(&["spectrum", "-i", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(qspectra(&["spectrum"]).status.code(), Some(2));
    assert_eq!(
        qspectra(&["spectrum", "--slice", "0,0,0"]).status.code(),
        Some(2)
    );
}

#[test]
fn shift_seed_falls_back_to_environment() {
    let run = |seed: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qspectra"));
        cmd.args(["shift", "--size", "6", "--trials", "2"])
            .args(args);
        match seed {
            Some(s) => cmd.env("QSPECTRA_SEED", s),
            None => cmd.env_remove("QSPECTRA_SEED"),
        };
        cmd.output().unwrap()
    };
    let from_env = run(Some("7"), &[]);
    let from_flag = run(None, &["--seed", "7"]);
    assert!(from_env.status.success());
    assert_eq!(from_env.stdout, from_flag.stdout);
    let v: Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["N"], 6);
}
