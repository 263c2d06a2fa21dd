use std::io::Write;
use std::process::{Command, Output};

use poisson_core::homology::{BettiTable, Kind, Mode};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poisson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_toml(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn modular_on_example() {
    let o = run(&["modular", &fixture("nonunimodular")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "φ(x)=0, φ(y)=0, φ(z)=-1; NOT unimodular\n");
}

#[test]
fn modular_json() {
    let o = run(&["--format", "json", "modular", &fixture("jps_cubic")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unimodular"], true);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["modular"].as_array().unwrap().len(), 3);
}

#[test]
fn check_passes_on_fixtures() {
    for name in ["nonunimodular", "quadratic", "so3", "jps_xyz", "zero"] {
        let o = run(&["check", "--max-degree", "2", &fixture(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn jacobi_failure_exit_code() {
    let o = run(&["check", &fixture("jacobi_failure")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("Jacobi"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_two() {
    let f = temp_toml("[ring]\nvars = [\"x\", \"y\"]\n\n[brackets]\n\"x,y\" = \"x +* y\"\n");
    let o = run(&["modular", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("5:"), "{}", stderr(&o));
    let o = run(&["modular", "/nonexistent/file.toml"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["homology", "--degree-range", "3..1", &fixture("so3")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn axiom_failure_exit_four() {
    let f = temp_toml(
        "[ring]\nvars = [\"x\", \"y\", \"z\"]\n\n[brackets]\n\"x,y\" = \"0\"\n\"y,z\" = \"y\"\n\"z,x\" = \"-1\"\n\n\
         [module]\nkind = \"matrix\"\nrank = 1\n\n[module.action]\nx = [[\"z\"]]\n",
    );
    let o = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn inhomogeneous_exact_mode_exit_five() {
    let o = run(&["homology", &fixture("nonunimodular")]);
    assert_eq!(o.status.code(), Some(5));
    let o = run(&["homology", "--mode", "filtered", "--degree-range", "0..2", &fixture("nonunimodular")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("filtered-approximate"));
}

#[test]
fn homology_json_round_trip() {
    let o = run(&[
        "--format",
        "json",
        "homology",
        "--degree-range",
        "0..3",
        "-p",
        "0,1,2,3",
        &fixture("so3"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t = BettiTable::from_json(&stdout(&o)).unwrap();
    assert_eq!(t.kind, Kind::Homology);
    assert_eq!(t.mode, Mode::ExactGraded);
    assert_eq!(t.entries.len(), 16);
    assert_eq!(BettiTable::from_json(&t.to_json()).unwrap(), t);
}

#[test]
fn cohomology_table_text() {
    let o = run(&["cohomology", "--degree-range", "0..2", &fixture("so3")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("PH^p (exact-graded"), "{s}");
    assert!(s.lines().nth(1).unwrap().starts_with("p\\d"));
}

#[test]
fn verify_duality_quadratic() {
    let o = run(&["verify-duality", "--max-degree", "2", "--degree-range", "-3..3", &fixture("quadratic")]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn verify_duality_inhomogeneous_skips_tables() {
    let o = run(&["verify-duality", "--max-degree", "2", &fixture("nonunimodular")]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn kernels_on_example() {
    let o = run(&["top-kernel", "--bound", "5", &fixture("nonunimodular")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension 0"), "{}", stdout(&o));
    let o = run(&["top-kernel", "--bound", "5", "--module", "twisted", &fixture("nonunimodular")]);
    assert!(stdout(&o).contains("dimension 1"), "{}", stdout(&o));
    let o = run(&["--format", "json", "casimirs", "--bound", "4", &fixture("nonunimodular")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["basis"], serde_json::json!([["1"]]));
}

#[test]
fn jps_potential_recovered() {
    let o = run(&["jps-potential", &fixture("jps_mixed")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("x^2*y") && out.contains("z^3"), "{out}");
}

#[test]
fn threads_variable_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_poisson"))
        .env("POISSON_THREADS", "2")
        .args(["modular", &fixture("so3")])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("; unimodular\n"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = run(&["modular", "--bogus", &fixture("so3")]);
    assert_eq!(o.status.code(), Some(2));
}
