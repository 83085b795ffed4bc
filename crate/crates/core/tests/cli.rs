use std::path::{Path, PathBuf};
use std::process::Command;

use pgonal::format::{envelope, problem_to_json, to_canonical_string, Problem};
use pgonal::selftest::{random_hyperelliptic, twisted_genus2, Fixture};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pgonal"))
}

fn write_problem(dir: &Path, name: &str, f: &Fixture) -> PathBuf {
    let pr = Problem {
        curve: f.curve.clone(),
        context: f.context.clone(),
        assume_unique: f.assume_unique,
        advisor: None,
    };
    let path = dir.join(name);
    std::fs::write(&path, to_canonical_string(&envelope("problem", problem_to_json(&pr)))).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn payload(doc: &str) -> Value {
    let v: Value = serde_json::from_str(doc).unwrap();
    v["payload"].clone()
}

#[test]
fn genus_of_klein_model() {
    let dir = tempfile::tempdir().unwrap();
    let (code, model, _) = run(&["model", "--case", "Klein37"]);
    assert_eq!(code, 0);
    let path = dir.path().join("klein.json");
    std::fs::write(&path, &model).unwrap();
    let (code, out, _) = run(&["genus", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(payload(&out)["genus"], 3);
}

#[test]
fn descend_then_verify_in_a_fresh_process() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(dir.path(), "problem.json", &twisted_genus2());
    let (code, result, err) = run(&["descend", problem.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(payload(&result)["degrees"]["f_over_k"], 1);
    let result_path = dir.path().join("result.json");
    std::fs::write(&result_path, &result).unwrap();
    let (code, out, err) = run(&["verify", problem.to_str().unwrap(), result_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(payload(&out)["valid"], true);
}

#[test]
fn quadratic_adjunction_result_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = random_hyperelliptic(4, 0)
        .into_iter()
        .find(|f| pgonal::selftest::run_fixture(f, 0).unwrap().degrees.f_over_k == 2)
        .expect("some twist needs the adjunction");
    let problem = write_problem(dir.path(), "problem.json", &f);
    let (code, result, err) = run(&["--seed", "0", "descend", problem.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let p = payload(&result);
    assert_eq!(p["degrees"]["f_over_k"], 2);
    assert_eq!(p["splitting"]["extension_degree"], 2);
    let result_path = dir.path().join("result.json");
    std::fs::write(&result_path, &result).unwrap();
    let (code, _, err) = run(&["verify", problem.to_str().unwrap(), result_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");

    // a corrupted degree report is caught by the stand-alone checker
    let tampered = result.replace("\"f_over_k\":2", "\"f_over_k\":3");
    assert_ne!(tampered, result);
    std::fs::write(&result_path, &tampered).unwrap();
    let (code, _, err) = run(&["verify", problem.to_str().unwrap(), result_path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(payload(&err)["clause"], "degree");
}

#[test]
fn descend_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(dir.path(), "problem.json", &twisted_genus2());
    let a = run(&["descend", problem.to_str().unwrap()]);
    let b = run(&["descend", problem.to_str().unwrap()]);
    assert_eq!(a, b);
}

#[test]
fn schema_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(dir.path(), "problem.json", &twisted_genus2());
    let text = std::fs::read_to_string(&problem).unwrap();
    let bad = text.replacen("\"p\":2", "\"p\":2,\"colour\":\"red\"", 1);
    std::fs::write(&problem, bad).unwrap();
    let (code, out, err) = run(&["descend", problem.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let e = payload(&err);
    assert_eq!(e["code"], "SchemaError");
    assert_eq!(e["path"], "payload.curve.colour");
}

#[test]
fn missing_file_and_bad_json() {
    let (code, _, err) = run(&["genus", "/nonexistent/curve.json"]);
    assert_eq!(code, 1);
    assert_eq!(payload(&err)["code"], "IoError");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n\"format_version\": \"pgonal/1\",\n\"kind\": ").unwrap();
    let (code, _, err) = run(&["genus", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let e = payload(&err);
    assert_eq!(e["code"], "ParseError");
    assert_eq!(e["line"], 3);
}

#[test]
fn moduli_report_for_rational_data() {
    let dir = tempfile::tempdir().unwrap();
    let problem = write_problem(dir.path(), "problem.json", &twisted_genus2());
    let (code, out, err) = run(&["moduli", problem.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let p = payload(&out);
    assert_eq!(p["moduli_degree"], 1);
    assert_eq!(p["applied_bound"], 4);
}

#[test]
fn family_model_with_parameter() {
    let (code, out, _) = run(&["model", "--case", "Family_2pp", "--p", "3", "--param", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(payload(&out)["branches"].as_array().unwrap().len(), 6);
    let (code, _, err) = run(&["model", "--case", "Family_2pp", "--p", "3", "--param=-1"]);
    assert_eq!(code, 1);
    assert_eq!(payload(&err)["code"], "BadParameter");
}
