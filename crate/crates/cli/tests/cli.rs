use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn heyde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heyde"))
        .args(args)
        .env_remove("HEYDE_ENUM_BOUND")
        .output()
        .unwrap()
}

fn heyde_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_heyde"))
        .args(args)
        .env_remove("HEYDE_ENUM_BOUND")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn file_with(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn constructed_z9_instance_checks_and_classifies() {
    let built = heyde(&["construct", "thm1-ii", "--group", "Z(9)", "--x0", "3"]);
    assert_eq!(built.status.code(), Some(0), "{}", stderr(&built));
    let report = json_of(&built);
    assert_eq!(report["result"]["all_checks_passed"], Value::Bool(true));
    assert_eq!(report["result"]["distributions"].as_array().unwrap().len(), 2);

    let file = file_with(std::str::from_utf8(&built.stdout).unwrap());
    let path = file.path().to_str().unwrap();
    let checked = heyde(&["check", "--exact", "--q", "--classify", path]);
    assert_eq!(checked.status.code(), Some(0), "{}", stderr(&checked));
    let r = json_of(&checked);
    assert_eq!(r["result"]["symmetric"], Value::Bool(true));
    assert_eq!(r["exit_code"], Value::from(0));
    let case = &r["result"]["classification"]["nonvanishing_case"];
    assert_eq!(case["status"], "counterexample");
    for class in r["result"]["classification"]["classes"].as_array().unwrap() {
        assert_eq!(class["degenerate"], Value::Bool(false));
    }
}

#[test]
fn violating_instance_exits_one_with_a_witness() {
    let file = file_with(
        r#"{"group":"Z(5)","a":[1,1],"b":[1,2],"distributions":[
            {"probs":[{"coords":[0],"mass":0.75},{"coords":[1],"mass":0.25}]},
            {"probs":[{"coords":[0],"mass":"1/3"},{"coords":[2],"mass":"2/3"}]}]}"#,
    );
    let out = heyde(&["check", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    assert_eq!(r["result"]["symmetric"], Value::Bool(false));
    assert!(r["result"]["cf"]["witness"].is_object() || r["result"]["cf"]["witness"].is_array());
}

#[test]
fn inadmissible_coefficient_exits_two() {
    let out = heyde_stdin(
        &["check", "-"],
        r#"{"group":"Z(2)","a":[2],"b":[1],"distributions":[{"kind":"point_mass","at":[1]}]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("inadmissible coefficient"), "{}", stderr(&out));
}

#[test]
fn lemma6_on_z5_builds_four_distributions() {
    let out = heyde(&["construct", "lemma6", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json_of(&out);
    assert_eq!(r["result"]["distributions"].as_array().unwrap().len(), 4);
    assert_eq!(r["result"]["all_checks_passed"], Value::Bool(true));
}

#[test]
fn lemma5_on_z9_passes_its_checks() {
    let out = heyde(&["construct", "lemma5", "--p", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json_of(&out)["result"]["group"], "Z(9)");
}

#[test]
fn thm1_ii_rejects_a_prime_order_group() {
    let out = heyde(&["construct", "thm1-ii", "--group", "Z(3)", "--x0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn classify_reports_class_memberships() {
    let classes = |input: &str| {
        let out = heyde_stdin(&["classify", "-"], input);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        json_of(&out)["result"]["classes"].clone()
    };
    let point = classes(r#"{"group":"Z(6)","kind":"point_mass","at":[4]}"#);
    for key in ["degenerate", "gaussian", "idempotent_shift", "gaussian_times_idempotent"] {
        assert_eq!(point[key], Value::Bool(true), "{key}");
    }
    let haar = classes(r#"{"group":"Z(4)","kind":"haar","generators":[[2]]}"#);
    assert_eq!(haar["idempotent_shift"], Value::Bool(true));
    assert_eq!(haar["degenerate"], Value::Bool(false));
    assert_eq!(haar["gaussian"], Value::Bool(false));
    let mixture = classes(
        r#"{"group":"Z(3)","kind":"mixture","components":[
            {"weight":"1/2","distribution":{"kind":"point_mass","at":[0]}},
            {"weight":"1/2","distribution":{"kind":"uniform"}}]}"#,
    );
    for key in ["degenerate", "gaussian", "idempotent_shift", "gaussian_times_idempotent"] {
        assert_eq!(mixture[key], Value::Bool(false), "{key}");
    }
}

#[test]
fn polytest_decides_degree() {
    let constant = heyde_stdin(
        &["polytest", "-"],
        r#"{"group":"Z(3)","values":[
            {"coords":[0],"re":2,"im":0},{"coords":[1],"re":2,"im":0},{"coords":[2],"re":2,"im":0}]}"#,
    );
    assert_eq!(constant.status.code(), Some(0));
    assert_eq!(json_of(&constant)["result"]["degree"], Value::from(0));

    // real part of a character on Z(5)
    let values: Vec<String> = (0..5)
        .map(|x| {
            let re = (std::f64::consts::TAU * x as f64 / 5.0).cos();
            format!(r#"{{"coords":[{x}],"re":{re},"im":0}}"#)
        })
        .collect();
    let input = format!(r#"{{"group":"Z(5)","values":[{}]}}"#, values.join(","));
    let cosine = heyde_stdin(&["polytest", "--max-degree", "2", "-"], &input);
    assert_eq!(cosine.status.code(), Some(1));
    assert_eq!(json_of(&cosine)["result"]["is_polynomial"], Value::Bool(false));

    let empty = heyde_stdin(&["polytest", "-"], r#"{"group":"Z(3)","values":[]}"#);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two() {
    let out = heyde_stdin(&["check", "-"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
    assert!(out.stdout.is_empty());
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let first = heyde(&["construct", "lemma6", "--p", "7", "--y2", "3"]);
    let file = file_with(std::str::from_utf8(&first.stdout).unwrap());
    let path = file.path().to_str().unwrap();
    let runs: Vec<Vec<u8>> = ["1", "4", "1"]
        .iter()
        .map(|jobs| {
            let out = heyde(&["--jobs", jobs, "check", "--exact", "--classify", path]);
            assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
            out.stdout
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));

    let sample = |jobs: &str| heyde(&["--jobs", jobs, "--seed", "9", "oracle", "sample", "--trials", "20000", path]).stdout;
    let one = sample("1");
    assert!(!one.is_empty());
    assert_eq!(one, sample("3"));
}

#[test]
fn sampling_stays_within_its_band() {
    let file = file_with(
        r#"{"group":"Z(3)","a":[1,1],"b":[1,1],"distributions":[
            {"probs":[{"coords":[0],"mass":"1/2"},{"coords":[1],"mass":"1/4"},{"coords":[2],"mass":"1/4"}]},
            {"kind":"uniform"}]}"#,
    );
    let out = heyde(&["oracle", "sample", "--seed", "3", "--trials", "50000", file.path().to_str().unwrap()]);
    let r = json_of(&out);
    assert_eq!(r["result"]["seed"], Value::from(3));
    assert_eq!(r["result"]["within_band"], Value::Bool(true));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn search_finds_no_witness_on_z3() {
    let out = heyde(&["oracle", "search", "--group", "Z(3)", "--a", "1,1", "--b", "1,1", "--grid-denominator", "3", "--trials", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json_of(&out)["result"]["witness"], Value::Null);
}

#[test]
fn enum_bound_comes_from_the_environment() {
    let file = file_with(
        r#"{"group":"Z(9)","a":[1,1,1],"b":[1,2,1],"distributions":[
            {"kind":"uniform"},{"kind":"uniform"},{"kind":"uniform"}]}"#,
    );
    let path = file.path().to_str().unwrap();
    let ok = heyde(&["check", "--exact", "--allow-inadmissible", path]);
    assert_ne!(ok.status.code(), Some(2), "{}", stderr(&ok));
    assert_eq!(json_of(&ok)["settings"]["enum_bound"], Value::from(1_000_000));

    let limited = Command::new(env!("CARGO_BIN_EXE_heyde"))
        .args(["check", "--exact", "--allow-inadmissible", path])
        .env("HEYDE_ENUM_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(2));
    assert!(stderr(&limited).starts_with("error:"));
}
