//! Library behind the `bsroots` command-line tool: ideal parsing, the
//! b-polynomial expression language and the JSON and table reports.

pub mod expr;
pub mod report;
pub mod spec;

use std::time::Instant;

use bsroots::error::{BPolyError, OracleError, RootsError};
use bsroots::geometry::{serde_rational, Rational};
use bsroots::roots::RootOptions;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use spec::{IdealJson, IdealSpec};

/// Failures, each mapped to a process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("stabilization failure: {0}")]
    Stabilization(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Stabilization(_) => 3,
        }
    }
}

impl From<RootsError> for CliError {
    fn from(e: RootsError) -> Self {
        match e {
            RootsError::NotStabilized { .. } => CliError::Stabilization(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<BPolyError> for CliError {
    fn from(e: BPolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Options shared by all subcommands.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub cap: Option<Rational>,
    pub box_bound: Option<i64>,
    pub table: bool,
    /// Adds wall-clock time to the report, which makes it nondeterministic.
    pub timing: bool,
}

impl Flags {
    pub fn root_options(&self) -> RootOptions {
        RootOptions { cap: self.cap.clone(), box_bound: self.box_bound }
    }

    pub fn parse_cap(text: &str) -> Result<Rational, CliError> {
        serde_rational::parse(text).ok_or_else(|| CliError::Parse(format!("cap {text:?} is not a rational p/q")))
    }

    fn echo(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.cap {
            out.push_str(&format!(" --cap {c}"));
        }
        if let Some(b) = self.box_bound {
            out.push_str(&format!(" --box {b}"));
        }
        out
    }
}

/// One subcommand with its positional arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Roots { ideal: String },
    ModZ { ideal: String },
    Faces { ideal: String },
    CheckTs { a: String, b: String },
    BPoly { expression: String },
    OracleVerify { max_exponent: i64, ideal: Option<String>, override_limits: bool },
}

impl Command {
    fn echo(&self, flags: &Flags) -> String {
        let head = match self {
            Command::Roots { ideal } => format!("roots {ideal:?}"),
            Command::ModZ { ideal } => format!("modz {ideal:?}"),
            Command::Faces { ideal } => format!("faces {ideal:?}"),
            Command::CheckTs { a, b } => format!("check-ts {a:?} {b:?}"),
            Command::BPoly { expression } => format!("bpoly {expression:?}"),
            Command::OracleVerify { max_exponent, ideal, override_limits } => {
                let mut s = format!("oracle-verify --max-exponent {max_exponent}");
                if let Some(i) = ideal {
                    s.push_str(&format!(" --ideal {i:?}"));
                }
                if *override_limits {
                    s.push_str(" --override-limits");
                }
                s
            }
        };
        head + &flags.echo()
    }
}

/// Rendered output and the exit code it should produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

/// Envelope shared by every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: String,
    /// SHA-256 of the canonical input: the parsed ideals or expression and the flags.
    pub input_digest: String,
    #[serde(flatten)]
    pub results: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn render<T: Serialize + report::Table>(
    command: &Command,
    flags: &Flags,
    canonical: String,
    results: T,
    start: Instant,
) -> String {
    let report = RunReport {
        command: command.echo(flags),
        input_digest: digest(&(canonical + &flags.echo())),
        results,
        timing_ms: flags.timing.then(|| start.elapsed().as_millis()),
    };
    if flags.table {
        let mut out = format!("command: {}\ndigest:  {}\n", report.command, report.input_digest);
        out.push_str(&report.results.table());
        if let Some(t) = report.timing_ms {
            out.push_str(&format!("time: {t} ms\n"));
        }
        out
    } else {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    }
}

/// Runs one subcommand.
pub fn execute(command: &Command, flags: &Flags) -> Result<Output, CliError> {
    let start = Instant::now();
    match command {
        Command::Roots { ideal } => {
            let spec = IdealSpec::parse(ideal)?;
            let result = report::roots_report(&spec, &flags.root_options())?;
            let code = if result.complete { 0 } else { 3 };
            let text = render(command, flags, canonical_ideal(&spec), result, start);
            Ok(Output { text, code })
        }
        Command::ModZ { ideal } => {
            let spec = IdealSpec::parse(ideal)?;
            let result = report::modz(&spec)?;
            Ok(Output { text: render(command, flags, canonical_ideal(&spec), result, start), code: 0 })
        }
        Command::Faces { ideal } => {
            let spec = IdealSpec::parse(ideal)?;
            let result = report::faces(&spec);
            Ok(Output { text: render(command, flags, canonical_ideal(&spec), result, start), code: 0 })
        }
        Command::CheckTs { a, b } => {
            let (sa, sb) = (IdealSpec::parse(a)?, IdealSpec::parse(b)?);
            let result = report::check_ts(&sa, &sb, &flags.root_options())?;
            let canonical = canonical_ideal(&sa) + "\n" + &canonical_ideal(&sb);
            Ok(Output { text: render(command, flags, canonical, result, start), code: 0 })
        }
        Command::BPoly { expression } => {
            let value = expr::evaluate(expression)?;
            let result = report::BPolyResult::new(expression, value);
            let canonical = format!("bpoly {}", result.factored);
            Ok(Output { text: render(command, flags, canonical, result, start), code: 0 })
        }
        Command::OracleVerify { max_exponent, ideal, override_limits } => {
            let spec = ideal.as_deref().map(IdealSpec::parse).transpose()?;
            let result = report::oracle_verify(*max_exponent, spec.as_ref(), *override_limits, &flags.root_options())?;
            let code = if result.pass { 0 } else { 3 };
            let canonical = match &spec {
                Some(s) => canonical_ideal(s),
                None => format!("catalog {max_exponent} {override_limits}"),
            };
            Ok(Output { text: render(command, flags, canonical, result, start), code })
        }
    }
}

fn canonical_ideal(spec: &IdealSpec) -> String {
    serde_json::to_string(&spec.to_json()).expect("ideal serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(command: Command, flags: &Flags) -> Result<Output, CliError> {
        execute(&command, flags)
    }

    fn roots(ideal: &str) -> Command {
        Command::Roots { ideal: ideal.into() }
    }

    #[test]
    fn reports_are_deterministic() {
        let flags = Flags::default();
        let commands = [
            roots("x^2*y, y^3"),
            Command::CheckTs { a: "x^2, y^7".into(), b: "z^14, w".into() },
            Command::Faces { ideal: "x*y^2, x^3".into() },
            Command::BPoly { expression: "arr(3,4)*det(2)".into() },
        ];
        for c in commands {
            let first = run(c.clone(), &flags).unwrap();
            let second = run(c, &flags).unwrap();
            assert_eq!(first, second);
        }
    }

    #[test]
    fn equal_ideals_share_a_digest() {
        let flags = Flags::default();
        let a: serde_json::Value = serde_json::from_str(&run(roots("x^2, x*y^3, y^4"), &flags).unwrap().text).unwrap();
        let b: serde_json::Value =
            serde_json::from_str(&run(roots(r#"{"vars": 2, "generators": [[0, 4], [2, 0], [1, 3], [2, 5]]}"#), &flags).unwrap().text)
                .unwrap();
        assert_eq!(a["input_digest"], b["input_digest"]);
        assert_eq!(a["roots"], b["roots"]);
    }

    #[test]
    fn exit_codes() {
        let flags = Flags::default();
        assert_eq!(run(roots("x^0"), &flags).unwrap_err().exit_code(), 2);
        assert_eq!(run(roots("x^"), &flags).unwrap_err().exit_code(), 2);
        assert_eq!(run(Command::Faces { ideal: "x^0".into() }, &flags).unwrap_err().exit_code(), 2);
        assert_eq!(run(Command::BPoly { expression: "arr(3,1)".into() }, &flags).unwrap_err().exit_code(), 2);
        assert_eq!(Flags::parse_cap("two").unwrap_err().exit_code(), 2);
        assert_eq!(run(roots("x^2, y^3"), &flags).unwrap().code, 0);
        let tiny = Flags { box_bound: Some(0), ..Flags::default() };
        assert_eq!(run(roots("x^2, y^3"), &tiny).unwrap().code, 0);
        assert_eq!(CliError::from(RootsError::NotStabilized { face: 0, budget: 1 }).exit_code(), 3);
    }

    #[test]
    fn roots_example() {
        let spec = IdealSpec::parse("x^2*y, y^3").unwrap();
        let r = report::roots_report(&spec, &RootOptions::default()).unwrap();
        assert_eq!(r.roots, vec!["-2/3", "-1", "-4/3", "-5/3"]);
        assert!(r.complete && !r.cap_hit);
    }

    #[test]
    fn cap_flag_truncates() {
        let flags = Flags { cap: Some(Flags::parse_cap("1").unwrap()), ..Flags::default() };
        let out: serde_json::Value = serde_json::from_str(&run(roots("x^2, y^3"), &flags).unwrap().text).unwrap();
        assert_eq!(out["roots"], serde_json::json!(["-5/6"]));
        assert_eq!(out["cap"], "1");
        assert!(out["command"].as_str().unwrap().ends_with("--cap 1"));
    }

    #[test]
    fn faces_example() {
        let f = report::faces(&IdealSpec::parse("x^2, y^3").unwrap());
        assert_eq!(f.faces.len(), 6);
        let diagonal: Vec<&report::FaceRow> = f.faces.iter().filter(|r| r.m.is_some()).collect();
        assert_eq!(diagonal.len(), 1);
        assert_eq!(diagonal[0].m, Some(6));
        let l: Vec<String> = diagonal[0].functional.as_ref().unwrap().iter().map(|r| r.to_string()).collect();
        assert_eq!(l, vec!["1/2", "1/3"]);
        assert_eq!(f.faces.iter().filter(|r| r.in_coordinate_hyperplane).count(), 4);
    }

    #[test]
    fn modz_example() {
        let m = report::modz(&IdealSpec::parse("x^2, y^7").unwrap()).unwrap();
        assert_eq!(m.generators, vec!["1/14"]);
        assert_eq!(m.classes.len(), 14);
    }

    #[test]
    fn check_ts_example() {
        let a = IdealSpec::parse("x^2, y^7").unwrap();
        let b = IdealSpec::parse("z^14, w").unwrap();
        let r = report::check_ts(&a, &b, &RootOptions::default()).unwrap();
        assert!(r.inclusion_holds && r.mod_z_equal && r.root_classes_equal);
        assert_eq!(r.w_b.len(), 14);
        assert!(matches!(report::check_ts(&a, &a, &RootOptions::default()), Err(CliError::Input(_))));
    }

    #[test]
    fn oracle_verify_single_and_catalog() {
        let spec = IdealSpec::parse("x^2*y, y^3").unwrap();
        let single = report::oracle_verify(8, Some(&spec), false, &RootOptions::default()).unwrap();
        assert!(single.pass && single.detail.is_some());
        let catalog = report::oracle_verify(2, None, false, &RootOptions::default()).unwrap();
        assert!(catalog.pass);
        assert_eq!(catalog.ideals, 18);
        assert!(report::oracle_verify(9, None, false, &RootOptions::default()).is_err());
        let big = IdealSpec::parse("x^9, y").unwrap();
        assert!(report::oracle_verify(8, Some(&big), false, &RootOptions::default()).is_err());
    }

    #[test]
    fn table_output() {
        let flags = Flags { table: true, ..Flags::default() };
        let text = run(Command::BPoly { expression: "det(2)".into() }, &flags).unwrap().text;
        assert!(text.contains("det(2) = (s+1)(s+2)"));
        let text = run(roots("x^2, y^3"), &flags).unwrap().text;
        assert!(text.starts_with("command: roots"));
        assert!(text.contains("roots: {-5/6, -7/6, -4/3, -3/2, -5/3, -2}"));
    }
}
