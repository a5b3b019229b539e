//! `perron-lab`: exact formulas, samplers, lattice counts and verification
//! suites for monic polynomials with roots in the unit disk.
//!
//! Exit codes: 0 success, 1 domain or I/O failure (and failed verification),
//! 2 bad arguments.

mod commands;
mod formulas;
mod output;

use std::fmt;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

/// Rational argument: `p/q`, an integer or a finite decimal.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational(pub BigRational);

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        perron_core::exact::parse_rational(s).map(Rational).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// Argument combinations clap cannot reject on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Parser)]
#[command(name = "perron-lab", version, about)]
struct Cli {
    /// Worker threads for sampling and enumeration (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact values of volumes, integrals, moments and root statistics.
    Formulas(formulas::FormulasArgs),
    /// Draw polynomials and write one JSON record per line, or a root CSV.
    Sample(commands::SampleArgs),
    /// Count integer polynomials by house and compare with the volume prediction.
    Count(commands::CountArgs),
    /// Run verification suites and print their reports as JSON.
    Verify(commands::VerifyArgs),
    /// Histogram of root arguments or moduli as `edge,count` CSV.
    Hist(commands::HistArgs),
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global()?;
    }
    match cli.command {
        Command::Formulas(a) => commands::formulas(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::Count(a) => commands::count(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Hist(a) => commands::hist(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
