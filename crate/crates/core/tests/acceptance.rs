//! Acceptance suite: one test per criterion so failures name the exact
//! criterion, plus a summary run printing the per-criterion table.

use sl3ext_core::verify::{criterion_tag, run_acceptance};

fn run_one(id: u8) {
    let results = run_acceptance(Some(criterion_tag(id)));
    assert_eq!(results.len(), 1, "criterion {id} did not run");
    let r = &results[0];
    println!("{}", r.line());
    assert!(r.passed, "criterion {id} failed: {}", r.detail);
}

#[test]
fn criterion_01_sec5_regression() {
    run_one(1);
}

#[test]
fn criterion_02_nu_set_laws() {
    run_one(2);
}

#[test]
fn criterion_03_constructive_se2_over_z() {
    run_one(3);
}

#[test]
fn criterion_04_th8_chain_suite() {
    run_one(4);
}

#[test]
fn criterion_05_lifting() {
    run_one(5);
}

#[test]
fn criterion_06_ex11_certificate() {
    run_one(6);
}

#[test]
fn criterion_07_symbolic_identities() {
    run_one(7);
}

#[test]
fn criterion_08_witness_equations() {
    run_one(8);
}

#[test]
fn criterion_09_pell_criterion() {
    run_one(9);
}

#[test]
fn criterion_10_class_lab_sanity() {
    run_one(10);
}

#[test]
fn full_suite_prints_table() {
    let results = run_acceptance(None);
    assert_eq!(results.len(), 10);
    for r in &results {
        println!("{}", r.line());
    }
    assert!(results.iter().all(|r| r.passed));
}
