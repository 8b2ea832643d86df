//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every identity is exact (rational equality after normalization);
//! the only tolerances are the stated total-variation bound for the
//! simulator and the sample counts of the stability searches.

use asep_core::checks::{
    all_passed, suite_bijections, suite_bracket_recursion, suite_colored_bracket_recursion,
    suite_colored_oracle, suite_confluence, suite_eulerian_diagonal, suite_exploration,
    suite_f_recursion, suite_narayana, suite_negative_dependence, suite_oracle_triangle,
    suite_simulation, CheckResult, SuiteOptions,
};

fn report(criterion: &str, results: &[CheckResult]) {
    let passed = all_passed(results);
    println!(
        "acceptance {criterion}: {} ({} checks)",
        if passed { "PASS" } else { "FAIL" },
        results.len()
    );
    for r in results.iter().filter(|r| !r.passed) {
        println!("  FAIL {}: {}", r.label, r.detail);
    }
    assert!(passed, "criterion failed: {criterion}");
}

#[test]
fn criterion_1_oracle_triangle() {
    report(
        "1 oracle-triangle (solve = ansatz = permutation sum, n <= 6)",
        &suite_oracle_triangle(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_2_colored_oracle() {
    report(
        "2 colored-oracle (r in {2,3}, n <= 4, with the collapse point)",
        &suite_colored_oracle(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_3_recursion_identities() {
    let mut results = suite_bracket_recursion(&SuiteOptions::default());
    results.extend(suite_colored_bracket_recursion(&SuiteOptions::default()));
    results.extend(suite_confluence(&SuiteOptions::default()));
    report(
        "3 bracket recursions (len <= 7; colored len <= 5) and confluence (len <= 8)",
        &results,
    );
}

#[test]
fn criterion_4_bijections_and_statistics() {
    report(
        "4 bijections, cardinalities, statistic transport, parent rule (n <= 6; colored n <= 4)",
        &suite_bijections(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_5_f_recursion() {
    report(
        "5 two-variable Eulerian recursion (n <= 4, r <= 3)",
        &suite_f_recursion(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_6_narayana() {
    report(
        "6 Narayana diagonal at q = 0 (n <= 6)",
        &suite_narayana(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_7_eulerian_diagonal() {
    report(
        "7 Eulerian diagonal at q = 1 (n <= 6)",
        &suite_eulerian_diagonal(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_8_negative_dependence() {
    report(
        "8 stability, negative correlation, association, concentration (n <= 5)",
        &suite_negative_dependence(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_9_simulation() {
    report(
        "9 simulation total variation < 1/50 (n = 4, 100000 samples)",
        &suite_simulation(&SuiteOptions::default()),
    );
}

#[test]
fn criterion_10_exploration() {
    report(
        "10 exploration grid emits deterministic verdicts (n = 4, 10 q-values)",
        &suite_exploration(&SuiteOptions::default()),
    );
}
