use std::process::Command;

use quadrille::lattice::VertexCoord;
use quadrille_cli::{render_ascii, run_cli};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quadrille").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    serde_json::from_str(&out).unwrap()
}

// Every number in emitted JSON must be a string, except small enumerations.
fn assert_no_json_numbers(v: &Value, allowed: &[&str], path: &str) {
    match v {
        Value::Number(_) => assert!(allowed.iter().any(|a| path.ends_with(a)), "number at {path}"),
        Value::Array(items) => items.iter().for_each(|i| assert_no_json_numbers(i, allowed, path)),
        Value::Object(map) => map.iter().for_each(|(k, i)| assert_no_json_numbers(i, allowed, &format!("{path}.{k}"))),
        _ => {}
    }
}

#[test]
fn render_shapes() {
    assert_eq!(render_ascii(&VertexCoord::origin(), 0), "+\n");
    for r in [1u64, 2, 5] {
        let art = render_ascii(&VertexCoord::new(-3, 17), r);
        let lines: Vec<&str> = art.lines().collect();
        assert_eq!(lines.len(), 4 * r as usize + 1);
        for (i, line) in lines.iter().enumerate() {
            assert_eq!(line.chars().count(), 4 * r as usize + 1);
            if i % 2 == 0 {
                assert!(line.chars().all(|c| "+EF".contains(c)), "{line}");
                assert!(line.chars().step_by(2).all(|c| c == '+'));
            } else {
                assert!(line.chars().step_by(2).all(|c| "ABCD".contains(c)), "{line}");
                assert!(line.chars().skip(1).step_by(2).all(|c| c == ' '));
            }
        }
    }
    let art = render_ascii(&VertexCoord::new(1, 0), 1);
    assert_eq!(art.lines().nth(2), Some("+E+F+"));
    let art = render_ascii(&VertexCoord::origin(), 1);
    assert_eq!(art.lines().nth(2), Some("+F+E+"));
}

#[test]
fn render_far_away_and_guard() {
    let (code, out, _) =
        run(&["render", "--x", "-18446744073709551616", "--y", "99999999999999999999", "--radius", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 13);
    let (code, _, err) = run(&["render", "--radius", "65"]);
    assert_eq!(code, 2);
    assert!(err.contains("65"));
    let v = run_json(&["render", "--radius", "1", "--format", "json"]);
    assert_eq!(v["lines"].as_array().unwrap().len(), 5);
    assert_eq!(v["center"]["x"], "0");
}

#[test]
fn witness_ab() {
    let v = run_json(&["witness", "--word", "AB", "--format", "json"]);
    assert_eq!(v["witness"]["x"], "8");
    assert_eq!(v["witness"]["y"], "0");
    assert_eq!(v["displacement"]["dx"], "0");
    assert_eq!(v["displacement"]["dy"], "2");
    assert_eq!(v["final_up_edge"], "D");
    assert_eq!(v["differs_from_start"], true);
    assert_no_json_numbers(&v, &[], "");
    let (code, out, _) = run(&["witness", "--word", "AB"]);
    assert_eq!(code, 0);
    assert!(out.contains("(8, 0)"));
}

#[test]
fn witness_rejects_bad_words() {
    for bad in ["AAB", "ABD", "", "ab"] {
        let (code, _, err) = run(&["witness", "--word", bad]);
        assert_eq!(code, 2, "{bad:?}");
        assert!(!err.is_empty());
    }
    assert_eq!(run(&["witness"]).0, 2);
}

#[test]
fn witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["witness", "--word", "CABCBA", "--format", "json"]);
    assert_eq!(code, 0);
    let good = dir.path().join("good.json");
    std::fs::write(&good, &out).unwrap();
    assert_eq!(run(&["witness", "--check", good.to_str().unwrap()]).0, 0);

    let mut tampered: Value = serde_json::from_str(&out).unwrap();
    tampered["witness"]["y"] = Value::String("1".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, tampered.to_string()).unwrap();
    let (code, _, err) = run(&["witness", "--check", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("verification failed"));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"word\": 3}").unwrap();
    assert_eq!(run(&["witness", "--check", garbage.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["witness", "--check", "/nonexistent/cert.json"]).0, 2);
}

#[test]
fn aperiodic_range_four() {
    let v = run_json(&["aperiodic", "--range", "4", "--format", "json", "--jobs", "2"]);
    assert_eq!(v["count"], "80");
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 80);
    assert_no_json_numbers(&v, &[], "");
    for c in certs {
        assert_ne!(c["colour_at"], c["colour_shifted"]);
    }
    let (code, out, _) = run(&["aperiodic", "--range", "1"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("8 translations certified\n"));
    assert_eq!(run(&["aperiodic", "--range", "1", "--jobs", "0"]).0, 2);
}

#[test]
fn verify_free_counts() {
    for len in 1..=4usize {
        let v = run_json(&["verify-free", "--max-len", &len.to_string(), "--format", "json", "--jobs", "2"]);
        let expected: usize = (1..=len).map(|l| 4 * 3usize.pow(l as u32 - 1)).sum();
        assert_eq!(v["words_checked"], expected.to_string());
        assert_eq!(v["per_length"].as_array().unwrap().len(), len);
    }
    assert_eq!(run(&["verify-free", "--max-len", "9"]).0, 2);
}

#[test]
fn homogeneity_small() {
    let v = run_json(&["homogeneity", "--search-radius", "32", "--validate-radius", "64", "--format", "json"]);
    assert!(v["validation"]["violations"].as_array().unwrap().is_empty());
    assert_eq!(v["report"]["search_radius"], "32");
    // A radius-16 square sees too little of the wider columns to bound f̂ at radius 32.
    let (code, out, _) = run(&["homogeneity", "--search-radius", "16", "--validate-radius", "32"]);
    assert_eq!(code, 1);
    assert!(out.contains("has no occurrence within"));
    assert_no_json_numbers(&v, &[], "");
    assert_eq!(run(&["homogeneity", "--pattern-radius", "3"]).0, 2);
}

#[test]
fn odometer_suites() {
    let v = run_json(&["odometer-verify", "--p", "2", "--n", "2", "--samples", "50", "--format", "json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["virtually_abelian"]["samples"], "50");
    assert_no_json_numbers(&v, &["params.p", "params.n"], "");
    let again = run_json(&["odometer-verify", "--p", "2", "--n", "2", "--samples", "50", "--format", "json"]);
    assert_eq!(v, again);
    assert_eq!(run(&["odometer-verify", "--p", "1"]).0, 2);
    assert_eq!(run(&["odometer-verify", "--n", "5"]).0, 2);
}

#[test]
fn odometer_element_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    std::fs::write(
        &path,
        r#"{"p":2,"n":1,"translations":{"0,0":["1","0"],"1,0":["1","0"],"0,1":["1","0"],"1,1":["1","0"]}}"#,
    )
    .unwrap();
    let v = run_json(&["odometer-verify", "--samples", "5", "--element", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(v["element"]["permutation"], serde_json::json!(["1", "0", "3", "2"]));
    assert_eq!(v["element"]["in_kernel"], false);

    std::fs::write(
        &path,
        r#"{"p":2,"n":1,"translations":{"0,0":["0","0"],"1,0":["1","0"],"0,1":["0","0"],"1,1":["0","0"]}}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["odometer-verify", "--samples", "5", "--element", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bijective"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["render", "--colour", "red"]).0, 2);
    assert_eq!(run(&["render", "--radius", "-1"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("odometer-verify"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_quadrille");
    let ok = Command::new(bin).args(["witness", "--word", "AB", "--format", "json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["index"], "3");
    let bad = Command::new(bin).args(["witness", "--word", "AAB"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}

#[test]
fn book_transcript_matches() {
    let book = include_str!("../../../book/src/cli.md");
    let after = book.split("$ quadrille render --radius 1\n").nth(1).unwrap();
    let shown: Vec<&str> = after.lines().take_while(|l| !l.is_empty()).collect();
    let (_, out, _) = run(&["render", "--radius", "1"]);
    assert_eq!(out.lines().collect::<Vec<_>>(), shown);

    let after = book.split("$ quadrille witness --word AAB\n").nth(1).unwrap();
    let (_, _, err) = run(&["witness", "--word", "AAB"]);
    assert_eq!(err.lines().next(), after.lines().next());
}
