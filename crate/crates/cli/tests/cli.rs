use std::path::PathBuf;
use std::process::Command;

use pearlhom::pearl::{builtin_datum, save_datum, BoundaryEntry, Term};
use pearlhom_cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn pearlhom(args: &[&str]) -> Outcome {
    run(std::iter::once("pearlhom").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    let out = pearlhom(&v);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pearlhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn torus_checks_pass() {
    for name in ["clifford", "chekanov", "exotic-s2s2"] {
        let out = pearlhom(&["--example", name, "check"]);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stdout);
        assert!(out.stdout.contains("status: pass"));
    }
}

#[test]
fn corrupted_file_fails_with_witness() {
    let mut d = builtin_datum("rp3-window").unwrap();
    d.boundary.push(BoundaryEntry {
        from: "q3".into(),
        to: "q2".into(),
        element: vec![Term {
            coeff: 1,
            class: Vec::new(),
        }],
    });
    let path = write_temp("corrupted.json", &save_datum(&d));
    let out = pearlhom(&["--input", path.to_str().unwrap(), "check", "--format", "json"]);
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    let d2 = &v["results"]["checks"]["d_squared"];
    assert_eq!(d2["ok"], false);
    assert!(!d2["witness"].is_null());
}

#[test]
fn input_errors_exit_two() {
    let bad = write_temp("bad.json", "{\"name\": 1}");
    let cases: Vec<Vec<&str>> = vec![
        vec!["--example", "nowhere", "check"],
        vec!["check"],
        vec!["--example", "clifford", "--input", "x.json", "check"],
        vec!["--input", bad.to_str().unwrap(), "check"],
        vec!["--input", "/nonexistent/datum.json", "check"],
        vec!["--example", "clifford", "--coefficients", "R", "homology"],
        vec!["--example", "clifford", "--degrees", "3", "homology"],
        vec!["--example", "clifford", "frobnicate"],
        vec!["--example", "clifford", "--coefficients", "Z", "spectral"],
    ];
    for args in cases {
        let out = pearlhom(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = pearlhom(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("--coefficients"));
}

#[test]
fn documented_examples() {
    let v = json(&["--example", "rp1-canonical", "homology"]);
    assert_eq!(v["results"]["summary"], "Z in every odd degree, 0 in every even degree");

    let v = json(&["--example", "chekanov", "--specialize", "novikov", "--coefficients", "Z", "homology"]);
    assert_eq!(v["results"]["summary"], "Z/5 in every degree");

    let v = json(&["--example", "rp4-window", "--coefficients", "F2", "homology"]);
    assert_eq!(v["results"]["summary"], "F2 in every degree");

    let v = json(&["--example", "clifford", "--field", "Q", "spectral"]);
    assert_eq!(v["results"]["convergence"]["ok"], true);

    let v = json(&["--example", "chekanov", "--field", "Q", "spectral", "--pages", "2"]);
    let pages = v["results"]["pages"].as_array().unwrap();
    let e2 = pages.iter().find(|p| p["r"] == 2).unwrap();
    assert!(e2["entries"].as_array().unwrap().iter().all(|e| e["dim"] == 0));

    let v = json(&["--example", "clifford", "dual"]);
    assert_eq!(v["results"]["d_squared"]["ok"], true);
}

#[test]
fn holonomy_composes_with_quotient() {
    let sub = write_temp("trivial.json", r#"{"generators": [[1, 0], [0, 1]], "character": [1, 1]}"#);
    let v = json(&[
        "--example", "rp1-canonical", "--holonomy", "1,-1", "--quotient", sub.to_str().unwrap(), "homology",
    ]);
    assert_eq!(v["results"]["summary"], "Z/2 in every odd degree, 0 in every even degree");

    let out = pearlhom(&["--example", "rp1-canonical", "--holonomy", "1,-1", "homology"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("not recognized"));
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_pearlhom");
    let args = ["--example", "exotic-s2s2", "--field", "Q", "spectral", "--format", "json"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(bin).args(["--example", "nowhere", "check"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
