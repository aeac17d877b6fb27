//! Command-line front end: instance files, reports, `G_n` verdicts and the
//! seeded selftest.
//!
//! Exit codes: 0 ok, 1 property failure, 2 semantic error, 3 parse error,
//! 4 I/O error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};

pub mod error;
pub mod instance;
pub mod render;
pub mod selftest;

pub use error::CliError;

use instance::InstanceFile;
use selftest::SelftestConfig;

#[derive(Debug, Parser)]
#[command(name = "semihom", version, about = "Exact invariants of line bundles and semihomogeneous bundles on abelian varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every object in an instance file is well formed.
    Validate {
        path: PathBuf,
        #[arg(long)]
        machine: bool,
    },
    /// Invariants of one named object.
    Report {
        path: PathBuf,
        object: String,
        #[arg(long)]
        machine: bool,
    },
    /// Index and ampleness of G_n for the family whose fibers look like the
    /// named bundle or class.
    GnReport {
        path: PathBuf,
        bundle: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        machine: bool,
    },
    /// Seeded sweep of all properties and oracles.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_g: usize,
        /// Floating-point tolerance as an exact rational, e.g. 1/1000000000.
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
        #[arg(long)]
        machine: bool,
    },
}

fn parse_tol(text: &str) -> Result<f64, CliError> {
    let q = semihom_core::exact_serde::parse_rational(text)
        .ok_or_else(|| CliError::Parse(format!("bad tolerance {text:?}")))?;
    if !q.is_positive() {
        return Err(CliError::Semantic(format!("tolerance must be positive, got {text}")));
    }
    q.to_f64()
        .filter(|t| t.is_finite() && *t > 0.0)
        .ok_or_else(|| CliError::Semantic(format!("tolerance {text} is not representable")))
}

fn load_model(path: &std::path::Path) -> Result<instance::Model, CliError> {
    InstanceFile::load(path)?.validated()
}

fn lookup<'a>(model: &'a instance::Model, name: &str) -> Result<instance::Object<'a>, CliError> {
    model.get(name).ok_or_else(|| CliError::Semantic(format!("unknown object '{name}'")))
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Validate { path, machine } => {
            let file = InstanceFile::load(path)?;
            let (model, errors) = file.build();
            if *machine {
                let doc = serde_json::json!({ "valid": errors.is_empty(), "objects": model.len(), "errors": errors });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
            } else if errors.is_empty() {
                writeln!(
                    out,
                    "ok: {} tori, {} classes, {} isogenies, {} bundles",
                    model.tori.len(),
                    model.classes.len(),
                    model.isogenies.len(),
                    model.bundles.len()
                )?;
            }
            if errors.is_empty() {
                Ok(())
            } else {
                Err(CliError::InvalidObjects(errors))
            }
        }
        Command::Report { path, object, machine } => {
            let model = load_model(path)?;
            let doc = render::object_doc(object, lookup(&model, object)?)?;
            let text = if *machine { render::machine(&doc) } else { render::human(&doc) };
            writeln!(out, "{}", text.trim_end())?;
            Ok(())
        }
        Command::GnReport { path, bundle, n, machine } => {
            let model = load_model(path)?;
            let doc = render::gn_doc(bundle, lookup(&model, bundle)?, *n)?;
            let text = if *machine { render::machine(&doc) } else { render::human(&doc) };
            writeln!(out, "{}", text.trim_end())?;
            Ok(())
        }
        Command::Selftest { seed, count, max_g, tol, machine } => {
            if *max_g == 0 || *max_g > 4 {
                return Err(CliError::Semantic(format!("--max-g must be in 1..=4, got {max_g}")));
            }
            let cfg = SelftestConfig { seed: *seed, count: *count, max_g: *max_g, tol: parse_tol(tol)?, tol_text: tol.clone() };
            let summary = selftest::run(&cfg);
            if *machine {
                writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("json"))?;
            } else {
                write!(out, "{}", selftest::render_human(&summary))?;
            }
            if summary.passed {
                Ok(())
            } else {
                Err(CliError::PropertyFailure { count: summary.failures })
            }
        }
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
