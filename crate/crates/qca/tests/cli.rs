use std::path::PathBuf;

use qca::cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn qca(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qca").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn qca_json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = qca(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn quantum_table_with_coefficients_runs() {
    let seed = fixture("a2.json");
    let (code, out, err) = qca(&["table", "--seed", &seed, "--sequence", "2,1,2,1,2", "--mode", "x-quantum-coeff"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 8, "{out}");
    assert!(out.contains("X1*(1 + t2*q*X2)"), "{out}");
}

#[test]
fn table_json_has_one_row_per_step() {
    let seed = fixture("a2.json");
    let v = qca_json(&["table", "--seed", &seed, "--sequence", "2,1,2,1,2", "--mode", "x-family"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["direction"], Value::Null);
    assert_eq!(rows[1]["direction"], 2);
    // the sequence has period five up to swapping the two variables
    assert_eq!(rows[5]["variables"][0], "X2");
    assert_eq!(rows[5]["variables"][1], "X1");
    assert_eq!(rows[5]["cvectors"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn emitted_seed_mutates_back() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("mu2.json");
    let seed = fixture("a2.json");
    let (code, _, err) = qca(&["mutate", "--seed", &seed, "--sequence", "2", "--emit-seed", emitted.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let back = qca_json(&["mutate", "--seed", emitted.to_str().unwrap(), "--sequence", "2", "--mode", "x-classical"]);
    let start = qca_json(&["mutate", "--seed", &seed, "--mode", "x-classical"]);
    assert_eq!(back["final"]["epsilon"], start["final"]["epsilon"]);
}

#[test]
fn scatter_exports_three_walls_for_a23() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("a23.svg");
    let json = dir.path().join("a23.json");
    let seed = fixture("a23.json");
    let (code, out, err) = qca(&[
        "scatter",
        "--seed",
        &seed,
        "--order",
        "2",
        "--quantum",
        "--emit-svg",
        svg.to_str().unwrap(),
        "--emit-json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("trivial to order 2 on |u| <= 3: yes"), "{out}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let walls = v["walls"].as_array().unwrap();
    assert_eq!(walls.len(), 3);
    let new: Vec<&Value> = walls.iter().filter(|w| w["incoming"] == false).collect();
    assert_eq!(new.len(), 1);
    assert_eq!(new[0]["ray"], serde_json::json!([-2, 3]));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn diagram_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (seed, extra) in [
        ("a23.json", vec!["--quantum", "--order", "4"]),
        ("a2fig.json", vec!["--order", "3"]),
        ("a2.json", vec!["--quantum", "--side", "x", "--order", "3"]),
    ] {
        let seed = fixture(seed);
        let first = dir.path().join("first.json");
        let second = dir.path().join("second.json");
        let mut args = vec!["scatter", "--seed", &seed, "--emit-json", first.to_str().unwrap()];
        args.extend(extra.iter().copied());
        assert_eq!(qca(&args).0, EXIT_OK);
        let (code, _, err) = qca(&[
            "scatter",
            "--seed",
            &seed,
            "--import",
            first.to_str().unwrap(),
            "--emit-json",
            second.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert_eq!(std::fs::read_to_string(&first).unwrap(), std::fs::read_to_string(&second).unwrap());
    }
}

#[test]
fn outputs_are_deterministic() {
    let a23 = fixture("a23.json");
    let rank3 = fixture("rank3.json");
    let runs: [&[&str]; 4] = [
        &["scatter", "--seed", &a23, "--quantum", "--order", "3"],
        &["theta", "--seed", &a23, "--gvector=-3,5", "--basepoint", "1/3,1/4"],
        &["--format", "json", "poisson", "--seed", &rank3, "--rank-check"],
        &["--format", "json", "pstar", "--seed", &rank3, "--check-intertwining", "--order", "6"],
    ];
    for args in runs {
        let a = qca(args);
        let b = qca(args);
        assert_eq!(a.0, EXIT_OK, "{}", a.2);
        assert_eq!(a, b);
    }
}

#[test]
fn figure_three_line_through_the_cli() {
    let seed = fixture("a23.json");
    let v = qca_json(&[
        "theta",
        "--seed",
        &seed,
        "--gvector=-3,5",
        "--basepoint",
        "1/3,1/3",
        "--order",
        "2",
        "--filter-exponent=1,-1",
    ]);
    let lines = v["broken_lines"].as_array().unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["final_coefficient"], "v^{-2} - 1 + v^2");
    assert_eq!(lines[0]["bends"], serde_json::json!([2, 0, 1]));
}

#[test]
fn rank3_fixture_checks_pass() {
    let seed = fixture("rank3.json");
    let (code, out, _) = qca(&["pstar", "--seed", &seed, "--check-intertwining", "--order", "6"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("FAIL"), "{out}");
    let (code, out, _) = qca(&["poisson", "--seed", &seed, "--rank-check", "--k", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mu2: Poisson map"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let a2 = fixture("a2.json");
    let rank3 = fixture("rank3.json");
    let bad: [&[&str]; 8] = [
        &["table", "--bogus"],
        &["frobnicate"],
        &["table", "--seed", "/nonexistent/seed.json"],
        &["table", "--seed", &a2, "--sequence", "3"],
        &["table", "--seed", &a2, "--sequence", "1", "--mode", "y-classical"],
        &["poisson", "--seed", &rank3, "--k", "3"],
        &["scatter", "--seed", &rank3],
        &["theta", "--seed", &a2, "--gvector=1,0", "--basepoint", "2/4,1"],
    ];
    for args in bad {
        let (code, out, err) = qca(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, _, err) = qca(&["check", "--suite", "nope"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("mutation-table"), "{err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = qca(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("scatter"));
    assert_eq!(qca(&["--version"]).0, EXIT_OK);
}

#[test]
fn check_all_exits_zero_with_documented_discrepancies() {
    let (code, out, err) = qca(&["check"]);
    assert_ne!(code, EXIT_CHECK_FAILED, "{out}");
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("criterion ")).count(), 6);
    assert!(out.contains("criterion 2 [coefficient-table]") && out.contains("FAIL (known:"), "{out}");
}

#[test]
fn binary_forwards_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qca");
    let ok = std::process::Command::new(bin).args(["check", "--suite", "broken-lines"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));
    let bad = std::process::Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
