//! The `dormant` command line: JSON in, JSON out.
//!
//! Exit status is 0 on success, 1 on a mathematical error (reported as
//! `{"error": <tag>, "message": ...}` on stdout) and 2 on usage or parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::covers::{self, RamTriple, Status, DEFAULT_BUDGET};
use crate::cyclic::find_cyclic;
use crate::descent::{descend_full, descend_once, unit_counit_checks};
use crate::duality::dualize_pinned;
use crate::error::Error;
use crate::exponent::{exponent, residue_graded_lengths, residue_length};
use crate::io;
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "dormant", version, about = "Higher-level differential modules in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the operator relations of a module file.
    Validate { file: PathBuf },
    /// Find an m-cyclic vector of a non-log module.
    Cyclic { file: PathBuf },
    /// Exponent at t = 0 of a dormant log module.
    Exponent { file: PathBuf },
    /// Residue length and its graded pieces.
    Residue { file: PathBuf },
    /// Dual of a pinned module.
    Dualize { file: PathBuf },
    /// Horizontal sections, one level down or all the way.
    Descend {
        file: PathBuf,
        #[arg(long)]
        full: bool,
    },
    /// Ramification triples of B_N with their permutation witnesses.
    Opers {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the rows to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search one triple for a prime-to-p witness.
    CoverCheck {
        l0: u64,
        l1: u64,
        linf: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = GridArg::Small)]
        grid: GridArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

enum Failure {
    Usage(String),
    Math(Error),
    /// A mathematical failure with a prepared JSON body.
    Report(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Math(other),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn failure_report(tag: &str, message: String, mut extra: serde_json::Map<String, Value>) -> Failure {
    extra.insert("error".into(), json!(tag));
    extra.insert("message".into(), json!(message));
    Failure::Report(Value::Object(extra))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let module = io::module_from_json(&read_json(&file)?)?;
            let report = module.validate();
            if report.passed() {
                Ok(json!({ "status": "pass" }))
            } else {
                let mut extra = serde_json::Map::new();
                extra.insert("status".into(), json!("fail"));
                extra.insert("identity_ok".into(), json!(report.identity_ok));
                extra.insert("failures".into(), json!(report.failures));
                Err(failure_report("RelationFailure", Error::RelationFailure(report.failures.len()).to_string(), extra))
            }
        }
        Command::Cyclic { file } => {
            let module = io::module_from_json(&read_json(&file)?)?;
            Ok(io::vector_to_json(&find_cyclic(&module)?))
        }
        Command::Exponent { file } => {
            let module = io::module_from_json(&read_json(&file)?)?;
            Ok(json!({ "exponent": exponent(&module)?.entries() }))
        }
        Command::Residue { file } => {
            let module = io::module_from_json(&read_json(&file)?)?;
            Ok(json!({
                "residue_length": residue_length(&module)?,
                "graded_lengths": residue_graded_lengths(&module)?,
            }))
        }
        Command::Dualize { file } => {
            let pinned = io::pinned_from_json(&read_json(&file)?)?;
            Ok(io::pinned_to_json(&dualize_pinned(&pinned)?))
        }
        Command::Descend { file, full } => {
            let module = io::module_from_json(&read_json(&file)?)?;
            if full {
                let d = descend_full(&module)?;
                let report = unit_counit_checks(&module)?;
                Ok(json!({
                    "rank": d.rank,
                    "basis": io::mat_to_json(&d.basis),
                    "unit_counit": {
                        "counit_full": report.counit_full,
                        "counit_once": report.counit_once,
                        "unit_once": report.unit_once,
                    },
                }))
            } else {
                let d = descend_once(&module)?;
                Ok(json!({
                    "rank": d.basis.cols(),
                    "basis": io::mat_to_json(&d.basis),
                    "module": d.module.as_ref().map(io::module_to_json),
                }))
            }
        }
        Command::Opers { p, n, budget, json } => {
            let rows = io::oper_rows_to_json(&covers::enumerate_opers(p, n, budget)?);
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&rows).expect("serializable") + "\n";
                std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(rows)
        }
        Command::CoverCheck { l0, l1, linf, p, n, budget } => {
            let t = RamTriple::new(l0, l1, linf);
            let degree = covers::degree(&t)?;
            let status = match covers::realizable(&t, p, n, budget) {
                Ok(covers::Realization::Witness(w)) => Status::Witness(w),
                Ok(covers::Realization::NoWitness) => Status::NoWitness,
                Err(Error::SearchBudgetExceeded { budget, explored }) => Status::BudgetExceeded { budget, explored },
                Err(e) => return Err(e.into()),
            };
            let mut out = io::status_to_json(&t, degree, &status);
            let radii = covers::radii_of_triple(&t, p, n)?;
            out["radii"] = json!(radii.map(|r| r.value));
            Ok(out)
        }
        Command::Selftest { grid } => {
            let grid = match grid {
                GridArg::Small => selftest::Grid::Small,
                GridArg::Full => selftest::Grid::Full,
            };
            let outcomes = selftest::run(grid);
            let criteria: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.ok(), "detail": o.detail }))
                .collect();
            if outcomes.iter().all(|o| o.ok()) {
                Ok(json!({ "passed": true, "criteria": criteria }))
            } else {
                let mut extra = serde_json::Map::new();
                extra.insert("passed".into(), json!(false));
                extra.insert("criteria".into(), json!(criteria));
                Err(failure_report("AcceptanceFailure", "some criteria failed".into(), extra))
            }
        }
    }
}

/// Parses `argv` (including the program name), runs it and writes JSON to `out`.
pub fn dispatch<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match run(cli.command) {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(out, "{}", json!({ "error": "Usage", "message": msg }));
            2
        }
        Err(Failure::Report(body)) => {
            let _ = writeln!(out, "{body}");
            1
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(out, "{}", json!({ "error": e.tag(), "message": e.to_string() }));
            1
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
