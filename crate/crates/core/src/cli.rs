//! The `pgonal` command line.
//!
//! Each subcommand writes one canonical document to standard output. Failures
//! write an `error` document to standard error and exit with 2 when the
//! descent found a certified obstruction, 1 otherwise.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::curve::curve_genus;
use crate::descent::{certify, descend, DescentOptions};
use crate::error::Error;
use crate::exactfield::{Q, DEFAULT_MAX_DEGREE};
use crate::exceptional::{classify, default_family_parameter, exceptional_model, Classification, ExceptionalTag};
use crate::format::{
    curve_from_json, curve_to_json, envelope, moduli_report_to_json, parse_payload, problem_from_json,
    result_from_json, result_to_json, to_canonical_string, Problem,
};
use crate::moduli::moduli_field;
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "pgonal", version, about = "Descend cyclic p-gonal curves to small fields of definition")]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest field degree any construction may reach.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_field_degree: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Descend a problem and print the certified result.
    Descend { problem: PathBuf },
    /// Re-check a result document against its problem.
    Verify { input: PathBuf, result: PathBuf },
    /// Is the p-gonal group of an (m, p) curve unique?
    Classify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
    },
    /// Genus of a curve document.
    Genus { curve: PathBuf },
    /// Field of moduli relative to the problem's context.
    Moduli { problem: PathBuf },
    /// Stored model of an exceptional family.
    Model {
        #[arg(long = "case")]
        case: String,
        /// The prime of Fermat_pp and Family_2pp.
        #[arg(long)]
        p: Option<u64>,
        /// The rational parameter of Family_2pp, as `n` or `n/d`.
        #[arg(long)]
        param: Option<String>,
    },
    /// Run the built-in acceptance suite.
    Selftest,
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome {
            code: 0,
            stdout: to_canonical_string(&doc) + "\n",
            stderr: String::new(),
        }
    }
}

/// A failure before or during a command.
enum Failure {
    Lib(Error),
    Io(PathBuf, String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// The `error` document for `e`.
pub fn error_document(e: &Error) -> Value {
    let mut payload = json!({"code": e.code_name(), "message": e.to_string()});
    match e {
        Error::SchemaError { path, .. } => payload["path"] = json!(path),
        Error::ParseError { line, column, .. } => {
            payload["line"] = json!(line);
            payload["column"] = json!(column);
        }
        Error::CertificateInvalid(clause) => payload["clause"] = json!(clause),
        _ => {}
    }
    envelope("error", payload)
}

fn failure_outcome(f: Failure) -> Outcome {
    let (code, doc) = match f {
        Failure::Lib(e) => {
            let code = if matches!(e, Error::SplittingFailed(_)) { 2 } else { 1 };
            (code, error_document(&e))
        }
        Failure::Io(path, msg) => (
            1,
            envelope(
                "error",
                json!({"code": "IoError", "message": format!("{}: {msg}", path.display())}),
            ),
        ),
        Failure::Usage(msg) => (1, envelope("error", json!({"code": "UsageError", "message": msg}))),
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr: to_canonical_string(&doc) + "\n",
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e.to_string()))
}

fn load_problem(path: &Path, seed: u64) -> Result<Problem, Failure> {
    let payload = parse_payload(&read(path)?, "problem")?;
    Ok(problem_from_json(&payload, "payload", seed)?)
}

fn parse_param(s: &str) -> Result<Q, Failure> {
    s.trim()
        .parse::<Q>()
        .map_err(|_| Failure::Lib(Error::BadParameter(format!("not a rational number: {s}"))))
}

fn execute(cli: Cli) -> Result<Value, Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::Descend { problem } => {
            let pr = load_problem(&problem, seed)?;
            let opts = DescentOptions {
                assume_unique: pr.assume_unique,
                max_field_degree: cli.max_field_degree,
                seed,
            };
            let r = descend(&pr.curve, &pr.context, &opts)?;
            certify(&pr.curve, &pr.context, &r)?;
            Ok(envelope("result", result_to_json(&r)))
        }
        Command::Verify { input, result } => {
            let pr = load_problem(&input, seed)?;
            let payload = parse_payload(&read(&result)?, "result")?;
            let r = result_from_json(&payload, "payload", seed)?;
            certify(&pr.curve, &pr.context, &r)?;
            Ok(envelope(
                "verification",
                json!({"valid": true, "f_over_k": r.degrees.f_over_k}),
            ))
        }
        Command::Classify { m, p } => {
            let class = classify(m, p)?;
            let tags: Vec<String> = match &class {
                Classification::Unique => Vec::new(),
                Classification::Exceptional(t) => t.iter().map(|t| t.name().to_string()).collect(),
            };
            Ok(envelope(
                "classification",
                json!({
                    "m": m,
                    "p": p,
                    "genus": crate::curve::genus_from(m, p),
                    "unique": class.is_unique(),
                    "tags": tags,
                }),
            ))
        }
        Command::Genus { curve } => {
            let payload = parse_payload(&read(&curve)?, "curve")?;
            let c = curve_from_json(&payload, "payload")?;
            Ok(envelope(
                "genus",
                json!({"genus": curve_genus(&c), "m": c.m(), "p": c.p()}),
            ))
        }
        Command::Moduli { problem } => {
            let pr = load_problem(&problem, seed)?;
            let rep = moduli_field(&pr.curve, &pr.context, pr.advisor.as_ref(), seed)?;
            Ok(envelope("report", moduli_report_to_json(&rep)))
        }
        Command::Model { case, p, param } => {
            let tag = ExceptionalTag::parse(&case, p)?;
            let a = match (tag, param) {
                (_, Some(s)) => Some(parse_param(&s)?),
                (ExceptionalTag::Family2PP(_), None) => Some(default_family_parameter()),
                _ => None,
            };
            let case = exceptional_model(tag, a)?;
            Ok(envelope("curve", curve_to_json(&case.model)))
        }
        Command::Selftest => {
            let doc = selftest::run(seed);
            if doc["payload"]["passed"] == json!(true) {
                Ok(doc)
            } else {
                Err(Failure::Usage(format!(
                    "selftest failed: {}",
                    to_canonical_string(&doc["payload"]["criteria"])
                )))
            }
        }
    }
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run_command<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => failure_outcome(Failure::Usage(e.to_string().trim_end().to_string())),
            };
        }
    };
    match execute(cli) {
        Ok(doc) => Outcome::ok(doc),
        Err(f) => failure_outcome(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_separate_obstructions_from_bad_input() {
        let o = failure_outcome(Failure::Lib(Error::SplittingFailed("-1".into())));
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("\"code\":\"SplittingFailed\""));
        let o = failure_outcome(Failure::Lib(Error::NotPrime(4)));
        assert_eq!(o.code, 1);
        assert!(o.stdout.is_empty());
    }

    #[test]
    fn classify_klein() {
        let o = run_command(["pgonal", "classify", "--m", "3", "--p", "7"]);
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["payload"]["tags"], json!(["Klein37"]));
        assert_eq!(v["payload"]["unique"], json!(false));
    }

    #[test]
    fn usage_errors_are_documents() {
        let o = run_command(["pgonal", "classify", "--m", "three", "--p", "7"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("UsageError"));
        let o = run_command(["pgonal", "model", "--case", "Nope"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("BadParameter"));
    }
}
