//! End-to-end tests of the binary surface: pinned example outputs, exit
//! codes and byte-stable JSON.

use std::process::{Command, Output};

fn kloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kloc"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = kloc(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn normalize_merges_coprime_factors() {
    assert_eq!(stdout(&["group", "normalize", "Z^2 + Z/4 + Z/3"]).trim(), "Z^2 + Z/12");
}

#[test]
fn localize_inverts_the_listed_primes() {
    assert_eq!(
        stdout(&["localize", "--group", "Z + Z/12", "--S", "{2,3}"]).trim(),
        "Z[1/6]"
    );
}

#[test]
fn coeff_prints_the_mod_q_degrees() {
    assert_eq!(
        stdout(&["coeff", "--theory", "period=2: [Z, 0]", "--q", "6"]).trim(),
        "degree 0: Z/6, degree 1: 0"
    );
}

#[test]
fn bifunctors_evaluate_on_both_grammars() {
    assert_eq!(stdout(&["group", "hom", "Z/12", "Z/18"]).trim(), "Z/6");
    assert_eq!(stdout(&["group", "ext", "Z/4", "Z"]).trim(), "Z/4");
    assert_eq!(stdout(&["group", "tensor", "Q/Z", "Q"]).trim(), "0");
    assert_eq!(stdout(&["group", "tor", "Z/6", "Q/Z"]).trim(), "Z/6");
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let out = kloc(&["group", "normalize", "Z/0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte 2"), "no position in: {err}");

    let usage = kloc(&["coeff", "--theory", "period=2: [Z, 0]", "--kind", "torsion"]);
    assert_eq!(usage.status.code(), Some(2), "missing --S is a usage error");
}

#[test]
fn failed_verification_exits_one() {
    let out = kloc(&["rc", "split", "--H", "Z/4"]);
    assert_eq!(out.status.code(), Some(1));

    let odd = kloc(&["toy", "theta", "--q", "3", "--p", "4"]);
    assert_eq!(odd.status.code(), Some(1), "3 does not divide 4");
}

#[test]
fn les_commands_verify_exactness() {
    let out = kloc(&[
        "les",
        "loc-coloc",
        "--theory",
        "period=2: [Z + Z/4, 0]",
        "--S",
        "{2}",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("exact: yes"), "{text}");
    assert!(text.contains("Prufer(2)"), "torsion layer missing: {text}");
}

#[test]
fn json_reports_are_byte_stable() {
    let args = [
        "paper-check",
        "--trials",
        "25",
        "--output",
        "json",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let parsed: serde_json::Value = serde_json::from_str(&a).expect("valid JSON");
    assert_eq!(parsed["passed"], serde_json::json!(true));
    assert_eq!(parsed["checks"].as_array().map(Vec::len), Some(11));
}

#[test]
fn parallel_runs_match_serial_runs() {
    let serial = stdout(&["paper-check", "--trials", "25", "--output", "json"]);
    let parallel = stdout(&[
        "paper-check",
        "--trials",
        "25",
        "--output",
        "json",
        "--parallel",
    ]);
    assert_eq!(serial, parallel);
}

#[test]
fn seed_changes_the_drawn_trials_but_not_the_schema() {
    let a = stdout(&["paper-check", "--trials", "10", "--output", "json", "--seed", "1"]);
    let b = stdout(&["paper-check", "--trials", "10", "--output", "json", "--seed", "2"]);
    let pa: serde_json::Value = serde_json::from_str(&a).expect("valid JSON");
    let pb: serde_json::Value = serde_json::from_str(&b).expect("valid JSON");
    assert_eq!(pa["passed"], serde_json::json!(true));
    assert_eq!(pb["passed"], serde_json::json!(true));
    assert_eq!(pa["seed"], serde_json::json!(1));
    assert_eq!(pb["seed"], serde_json::json!(2));
}

#[test]
fn printed_values_reparse_to_themselves() {
    for expr in ["Z^3 + Z/8", "Q/Z", "Z[1/6] + Prufer(2)^2", "0"] {
        let printed = stdout(&["group", "normalize", expr]).trim().to_string();
        let again = stdout(&["group", "normalize", &printed]).trim().to_string();
        assert_eq!(printed, again);
    }
}

#[test]
fn custom_pairs_load_from_json() {
    let dir = std::env::temp_dir().join("kloc-pair-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("point.json");
    std::fs::write(
        &path,
        r#"{
            "real": "period=8: [Z, Z/2, Z/2, 0, Z, 0, 0, 0]",
            "complex": "period=2: [Z, 0]",
            "chi": [[[1]], [[1]], [], [[]], [], [], [], [[]]],
            "c": [[[1]], [], [[0]], [], [[2]], [], [[]], []],
            "delta": [[], [], [[2]], [[]], [[1]], [], [[1]], []]
        }"#,
    )
    .expect("write pair file");
    let path = path.to_str().expect("utf-8 path");
    let text = stdout(&["rc", "les", "--pair", path]);
    assert!(text.contains("exact: yes"), "{text}");
    let split = stdout(&["rc", "split", "--pair", path, "--H", "Z/7"]);
    assert!(split.contains("splits: yes"), "{split}");
}
