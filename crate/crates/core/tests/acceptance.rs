//! Acceptance gate: one test per suite criterion, each printing a single
//! PASS/FAIL line (visible under `--nocapture`).  The suite is computed once
//! and shared; criterion 10 additionally reruns the installed binary twice
//! and compares raw bytes.

use std::process::Command;

use finpair::verify::{run_suite, CriterionResult, VerifySummary};
use once_cell::sync::Lazy;

static SUMMARY: Lazy<VerifySummary> = Lazy::new(|| run_suite().expect("verify suite failed to run"));

fn criterion(number: usize) -> &'static CriterionResult {
    SUMMARY
        .results
        .iter()
        .find(|r| r.number == number)
        .unwrap_or_else(|| panic!("criterion {number} missing from suite"))
}

fn check(number: usize) {
    let r = criterion(number);
    println!("C{} {}: {}", r.number, r.name, if r.pass { "PASS" } else { "FAIL" });
    assert!(
        r.pass,
        "criterion {} ({}) failed\n  claim:    {}\n  measured: {}",
        r.number, r.name, r.claim, r.measured
    );
}

#[test]
fn c01_torus_coset_counts() {
    check(1);
}

#[test]
fn c02_steinberg_multiplicity() {
    check(2);
}

#[test]
fn c03_non_gelfand_detection() {
    check(3);
}

#[test]
fn c04_eps_gelfand_bound() {
    check(4);
}

#[test]
fn c05_dimension_identities() {
    check(5);
}

#[test]
fn c06_random_twist_dimensions() {
    check(6);
}

#[test]
fn c07_one_block_count_bound() {
    check(7);
}

#[test]
fn c08_semisimple_cosets_fixed() {
    check(8);
}

#[test]
fn c09_fraction_trend() {
    check(9);
}

#[test]
fn c10_byte_determinism() {
    check(10);

    // The in-suite check compares rendered documents within one process.
    // Repeat the comparison across two fresh processes of the real binary.
    let exe = env!("CARGO_BIN_EXE_finpair");
    let run = || {
        Command::new(exe)
            .args(["run", "--pair", "gl-torus(1,1)", "--q", "3,5", "--seed", "7"])
            .output()
            .expect("spawn finpair")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run exited nonzero");
    assert!(second.status.success(), "second run exited nonzero");
    assert!(!first.stdout.is_empty(), "run produced no output");
    assert_eq!(first.stdout, second.stdout, "binary reruns differ on stdout");
    println!("C10 byte-determinism (binary rerun): PASS");
}
