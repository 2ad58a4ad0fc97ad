//! Exit-code and file-format contract of the command-line interface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gdstar")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("gdstar_cli_tests").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_json(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

const A_IDEMPOTENT: &str =
    r#"{"rows":2,"cols":2,"data":[[[1.0,0.0],[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#;
const IDENTITY2: &str =
    r#"{"rows":2,"cols":2,"data":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]}"#;

#[test]
fn compute_gd_star_writes_known_value() {
    let dir = workdir("compute");
    let a = dir.join("A2.json");
    let out = dir.join("X.json");
    write_json(&a, A_IDEMPOTENT);
    let result = run(&[
        "compute",
        "--what",
        "gd-star",
        "--in",
        a.to_str().unwrap(),
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["data"][0][0][0], 2.0);
    assert_eq!(file["data"][0][1][0], 0.0);
    assert_eq!(file["data"][1][0][0], 0.0);
    assert_eq!(file["data"][1][1][0], 0.0);
}

#[test]
fn verify_penrose_identity_exit_zero() {
    let dir = workdir("verify");
    let i = dir.join("I.json");
    write_json(&i, IDENTITY2);
    let result = run(&[
        "verify",
        "--suite",
        "penrose",
        "--in",
        i.to_str().unwrap(),
        "--witness",
        i.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
}

#[test]
fn verification_failure_exits_one() {
    let dir = workdir("fail");
    let a = dir.join("A.json");
    let zero = dir.join("Z.json");
    write_json(&a, A_IDEMPOTENT);
    write_json(
        &zero,
        r#"{"rows":2,"cols":2,"data":[[[0.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#,
    );
    // the zero matrix is not a Moore-Penrose inverse of A
    let result = run(&[
        "verify",
        "--suite",
        "penrose",
        "--in",
        a.to_str().unwrap(),
        "--witness",
        zero.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = workdir("usage");
    let a = dir.join("A.json");
    write_json(&a, A_IDEMPOTENT);
    // unknown flag
    let result = run(&["compute", "--nonsense"]);
    assert_eq!(result.status.code(), Some(2));
    // unknown subcommand value
    let result = run(&["compute", "--what", "bogus", "--in", a.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    // malformed JSON
    let broken = dir.join("broken.json");
    write_json(&broken, "{not json");
    let result = run(&["compute", "--what", "mp", "--in", broken.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&result.stderr).is_empty());
    // dimension mismatch inside the file
    let mismatched = dir.join("mismatch.json");
    write_json(
        &mismatched,
        r#"{"rows":2,"cols":2,"data":[[[1.0,0.0]]]}"#,
    );
    let result = run(&["compute", "--what", "mp", "--in", mismatched.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    // missing file
    let result = run(&["compute", "--what", "mp", "--in", "/nonexistent/A.json"]);
    assert_eq!(result.status.code(), Some(2));
    // group inverse of an index-2 matrix is a domain error
    let nil = dir.join("nil.json");
    write_json(
        &nil,
        r#"{"rows":2,"cols":2,"data":[[[0.0,0.0],[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#,
    );
    let result = run(&["compute", "--what", "group", "--in", nil.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn order_relation_answers() {
    let dir = workdir("order");
    let a = dir.join("A.json");
    let b = dir.join("B.json");
    write_json(
        &a,
        r#"{"rows":2,"cols":2,"data":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#,
    );
    write_json(&b, IDENTITY2);
    let result = run(&[
        "order",
        "--relation",
        "star",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    // reversed direction does not hold
    let result = run(&[
        "order",
        "--relation",
        "star",
        b.to_str().unwrap(),
        a.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    // witness-relative relation without a witness is a usage error
    let result = run(&[
        "order",
        "--relation",
        "gd-star",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn decompose_and_solve_and_markov() {
    let dir = workdir("misc");
    let a = dir.join("A.json");
    write_json(&a, A_IDEMPOTENT);
    let f = dir.join("F.json");
    let result = run(&[
        "decompose",
        "--form",
        "hs",
        "--in",
        a.to_str().unwrap(),
        "--out",
        f.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(parsed["r"], 1);

    let b = dir.join("b.json");
    write_json(&b, r#"{"rows":2,"cols":1,"data":[[[1.0,0.0]],[[1.0,0.0]]]}"#);
    let result = run(&[
        "solve",
        "--mode",
        "lsq",
        "--A",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    assert!(result.status.success());

    let t = dir.join("T.json");
    write_json(
        &t,
        r#"{"rows":2,"cols":2,"data":[[[0.9,0.0],[0.1,0.0]],[[0.5,0.0],[0.5,0.0]]]}"#,
    );
    let result = run(&["markov", "--T", t.to_str().unwrap()]);
    assert!(result.status.success());
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("0.8333333333"), "stdout: {stdout}");

    // identity chain: not ergodic, usage error
    let i = dir.join("I.json");
    write_json(&i, IDENTITY2);
    let result = run(&["markov", "--T", i.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn law_subcommand_runs() {
    let dir = workdir("law");
    let a = dir.join("A.json");
    let b = dir.join("B.json");
    // commuting diagonal pair with containment
    write_json(
        &a,
        r#"{"rows":2,"cols":2,"data":[[[2.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#,
    );
    write_json(
        &b,
        r#"{"rows":2,"cols":2,"data":[[[3.0,0.0],[0.0,0.0]],[[0.0,0.0],[5.0,0.0]]]}"#,
    );
    let result = run(&[
        "law",
        "--name",
        "reverse-gd",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let result = run(&["law", "--name", "bogus", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn fuzz_small_run_and_unknown_suite() {
    let dir = workdir("fuzz");
    let report = dir.join("r.json");
    let result = run(&[
        "fuzz",
        "--suites",
        "gd,solve",
        "--n",
        "3",
        "--max-size",
        "4",
        "--seed",
        "5",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["verdict"], "pass");

    let result = run(&["fuzz", "--suites", "nonexistent", "--n", "1"]);
    assert_eq!(result.status.code(), Some(2));
}
