//! The acceptance gate: one test per numbered reproduction criterion.
//! Each test drives the same checks as `kloc paper-check` and pins the
//! agreed trial counts, seed and time budgets.

use kloc_cli::suite::{self, CheckResult, SuiteConfig};

fn cfg() -> SuiteConfig {
    SuiteConfig {
        seed: 0xC0FFEE,
        trials: 500,
        max_order: 4096,
        parallel: false,
    }
}

fn assert_passed(criterion: u32, r: &CheckResult) {
    println!(
        "criterion {criterion}: {} ({}, {} ms)",
        if r.passed { "PASS" } else { "FAIL" },
        r.summary,
        r.millis
    );
    assert!(
        r.passed,
        "criterion {criterion} failed: {}\n{}",
        r.summary,
        r.details.join("\n")
    );
}

#[test]
fn criterion_01_cone_ktheory_under_one_second() {
    let r = suite::check_cone_ktheory(&cfg());
    assert_passed(1, &r);
    assert!(r.millis < 1000, "took {} ms, budget is 1000 ms", r.millis);
}

#[test]
fn criterion_02_kko_cone_table() {
    assert_passed(2, &suite::check_kko_table(&cfg()));
}

#[test]
fn criterion_03_exponent_bound() {
    assert_passed(3, &suite::check_exponent_bound(&cfg()));
}

#[test]
fn criterion_04_self_pairing_two_routes() {
    assert_passed(4, &suite::check_kk_self_pairing(&cfg()));
}

#[test]
fn criterion_05_divisible_suite_keeps_open_claim_open() {
    let r = suite::check_divisible_suite(&cfg());
    assert_passed(5, &r);
    assert!(
        r.details.iter().any(|d| d.contains("unverified")),
        "the open claim must be reported as unverified"
    );
}

#[test]
fn criterion_06_s_equivalence_500_trials_under_a_minute() {
    let r = suite::check_s_equivalence(&cfg());
    assert_passed(6, &r);
    assert!(
        r.millis < 60_000,
        "took {} ms, budget is 60000 ms",
        r.millis
    );
}

#[test]
fn criterion_07_exactness_suites() {
    assert_passed(7, &suite::check_exactness_suites(&cfg()));
}

#[test]
fn criterion_08_square_annihilation() {
    assert_passed(8, &suite::check_square_annihilation(&cfg()));
}

#[test]
fn criterion_09_colimit_oracle_stabilises() {
    assert_passed(9, &suite::check_colimit_oracle(&cfg()));
}

#[test]
fn criterion_10_splitting_tables() {
    assert_passed(10, &suite::check_splitting(&cfg()));
}

#[test]
fn criterion_11_detection_equivalence() {
    assert_passed(11, &suite::check_detection(&cfg()));
}

#[test]
fn criterion_12_paper_check_binary_aggregates_all() {
    let started = std::time::Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_kloc"))
        .arg("paper-check")
        .output()
        .expect("the binary runs");
    let elapsed = started.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    println!(
        "criterion 12: {} (exit {:?}, {} ms)",
        if output.status.success() { "PASS" } else { "FAIL" },
        output.status.code(),
        elapsed.as_millis()
    );
    assert!(
        output.status.success(),
        "paper-check exited {:?}:\n{stdout}",
        output.status.code()
    );
    for name in [
        "cone-ktheory",
        "kko-cone-table",
        "exponent-bound",
        "kk-self-pairing",
        "divisible-suite",
        "s-equivalence",
        "exactness-suites",
        "square-annihilation",
        "colimit-oracle",
        "splitting-theorem",
        "detection-equivalence",
    ] {
        assert!(stdout.contains(name), "table is missing the {name} row");
        let row = stdout
            .lines()
            .find(|l| l.contains(name))
            .expect("row exists");
        assert!(row.contains("PASS"), "row not passing: {row}");
    }
    assert!(
        stdout.contains("11/11 checks passed"),
        "missing the aggregate line:\n{stdout}"
    );
    assert!(
        elapsed.as_secs() < 300,
        "took {} s, budget is 300 s",
        elapsed.as_secs()
    );
}
