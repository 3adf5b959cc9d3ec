//! End-to-end tests of the foxcalc binary: exit codes, determinism, and the
//! pairing-file round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn foxcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foxcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("foxcalc-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn solve_writes_pairing_and_reports_invariants() {
    let out_file = tmp_path("g1.fxp");
    let out = foxcalc(&[
        "solve",
        "--genus",
        "1",
        "--coeff",
        "Q",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "solved genus=1 coeff=Q L=2 kernel_dim=0 lambda=1\n"
    );
    let text = std::fs::read_to_string(&out_file).unwrap();
    assert!(text.starts_with("foxpairing v1\nalphabet 2 a b\ncoeff Q\n"));
    assert!(text.contains("eta a a = 1 - a\n"));
    std::fs::remove_file(&out_file).ok();
}

#[test]
fn eval_prints_canonical_element() {
    let out_file = tmp_path("g1-eval.fxp");
    foxcalc(&[
        "solve",
        "--genus",
        "1",
        "--coeff",
        "Q",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    let out = foxcalc(&[
        "eval",
        "--pairing",
        out_file.to_str().unwrap(),
        "--left",
        "a*b",
        "--right",
        "b",
    ]);
    assert!(out.status.success());
    // eta(ab, b) = eta(a, b) + a eta(b, b) = (1 - b + ab) + a(-b + b^2)
    assert_eq!(stdout(&out), "1 - b + a*b^2\n");
    std::fs::remove_file(&out_file).ok();
}

#[test]
fn check_exit_codes_and_determinism() {
    let out_file = tmp_path("g1-check.fxp");
    foxcalc(&[
        "solve",
        "--genus",
        "1",
        "--coeff",
        "Q",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    let file = out_file.to_str().unwrap();

    let pass = foxcalc(&[
        "check",
        "--pairing",
        file,
        "--skew",
        "--samples",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(stdout(&pass), "PASS skew-identity samples=100 seed=7\n");

    // determinism: identical bytes on a second run
    let again = foxcalc(&[
        "check",
        "--pairing",
        file,
        "--skew",
        "--samples",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(stdout(&pass), stdout(&again));

    let boundary = foxcalc(&[
        "check",
        "--pairing",
        file,
        "--boundary",
        "a*b*A*B",
        "--normalized",
        "--samples",
        "50",
        "--seed",
        "3",
    ]);
    assert_eq!(boundary.status.code(), Some(0), "{}", stdout(&boundary));

    let aug = foxcalc(&[
        "check",
        "--pairing",
        file,
        "--aug-intersection",
        "1",
        "--samples",
        "100",
        "--seed",
        "9",
    ]);
    assert_eq!(aug.status.code(), Some(0));
    assert!(stdout(&aug).contains("lambda=1"));

    std::fs::remove_file(&out_file).ok();
}

#[test]
fn failing_check_exits_one() {
    // The zero pairing fails the normalized boundary condition.
    let file = tmp_path("zero.fxp");
    std::fs::write(
        &file,
        "foxpairing v1\nalphabet 2 a b\ncoeff Q\neta a a = 0\neta a b = 0\neta b a = 0\neta b b = 0\n",
    )
    .unwrap();
    let out = foxcalc(&[
        "check",
        "--pairing",
        file.to_str().unwrap(),
        "--boundary",
        "a*b*A*B",
        "--normalized",
        "--samples",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
    std::fs::remove_file(&file).ok();
}

#[test]
fn usage_errors_exit_two() {
    let out = foxcalc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown verb"));

    let out = foxcalc(&["solve", "--genus"]);
    assert_eq!(out.status.code(), Some(2));

    let out = foxcalc(&["solve", "--genus", "0", "--coeff", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("genus 0"));

    let out = foxcalc(&["solve", "--genus", "1", "--coeff", "Z"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("field"));
}

#[test]
fn malformed_pairing_file_reports_line() {
    let file = tmp_path("bad.fxp");
    std::fs::write(
        &file,
        "foxpairing v1\nalphabet 2 a b\ncoeff Q\neta a a = 1\neta a b oops\neta b a = 0\neta b b = 0\n",
    )
    .unwrap();
    let out = foxcalc(&[
        "eval",
        "--pairing",
        file.to_str().unwrap(),
        "--left",
        "a",
        "--right",
        "b",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 5"), "{}", stderr(&out));
    std::fs::remove_file(&file).ok();
}

#[test]
fn transpose_round_trip_is_involutive() {
    let file = tmp_path("g1-t.fxp");
    let once = tmp_path("g1-t1.fxp");
    let twice = tmp_path("g1-t2.fxp");
    foxcalc(&[
        "solve",
        "--genus",
        "1",
        "--coeff",
        "Q",
        "--out",
        file.to_str().unwrap(),
    ]);
    let out = foxcalc(&[
        "transpose",
        "--pairing",
        file.to_str().unwrap(),
        "--out",
        once.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = foxcalc(&[
        "transpose",
        "--pairing",
        once.to_str().unwrap(),
        "--out",
        twice.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let original = std::fs::read_to_string(&file).unwrap();
    let back = std::fs::read_to_string(&twice).unwrap();
    // matrices agree line for line; metadata lines differ
    let entries = |s: &str| {
        s.lines()
            .filter(|l| l.starts_with("eta "))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(entries(&original), entries(&back));
    for f in [&file, &once, &twice] {
        std::fs::remove_file(f).ok();
    }
}

#[test]
fn derive_higher_kappa_quasi_rho_verbs() {
    let out = foxcalc(&[
        "derive", "--names", "a b", "--coeff", "Q", "--side", "left", "--gen", "a", "--word",
        "a*b*A*B",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 - a*b*a^-1\n");

    let out = foxcalc(&[
        "higher",
        "--n",
        "2",
        "--coeff",
        "Q",
        "--left",
        "t1^2 ; t2",
        "--right",
        "t1 ; t2^2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = foxcalc(&[
        "higher",
        "--n",
        "2",
        "--coeff",
        "Q",
        "--check-cocycle",
        "--samples",
        "20",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS higher-cocycle"));

    let file = tmp_path("g1-verbs.fxp");
    foxcalc(&[
        "solve",
        "--genus",
        "1",
        "--coeff",
        "Q",
        "--out",
        file.to_str().unwrap(),
    ]);
    let f = file.to_str().unwrap();

    let out = foxcalc(&["kappa", "--pairing", f, "--g", "a", "--h", "b"]);
    assert!(out.status.success());
    let out = foxcalc(&[
        "kappa",
        "--pairing",
        f,
        "--check",
        "--samples",
        "50",
        "--seed",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = foxcalc(&[
        "quasi",
        "--pairing",
        f,
        "--values",
        "0 ; 0",
        "--samples",
        "50",
        "--seed",
        "2",
        "--word",
        "a*b",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS quasi-derivation-law"));

    let out = foxcalc(&[
        "rho",
        "--names",
        "a b",
        "--coeff",
        "Q",
        "--dl",
        "1 ; 0",
        "--dr",
        "0 ; 1",
        "--samples",
        "30",
        "--seed",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS rho-vs-derivation-pairing"));
    // the materialized pairing is the delta matrix eta(a, b) = 1
    assert!(stdout(&out).contains("eta a b = 1\n"));

    std::fs::remove_file(&file).ok();
}
