//! Problem files, run reports and the command surface of the `bpscal` binary.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 a theorem hypothesis (or
//! the separation it asks for) failed, 3 a computed certificate did not
//! verify.

mod commands;
mod problem_file;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cone::Point;
use crate::error::Error;
use crate::expr::ExprError;

pub use commands::run;
pub use problem_file::{
    grid_points, load_problem, load_problem_file, GridSource, ImageSource, ProblemFile, Source, MAX_GRID_IMAGES,
};
pub use report::{LabelRow, MonotoneSummary, Outcome, RunReport, ScalarSummary, TheoremOutcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error at {}: {message}", if path.is_empty() { "/" } else { path })]
    Schema { path: String, message: String },
    #[error("objective {index}: {source}")]
    Objective {
        index: usize,
        #[source]
        source: ExprError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::HypothesisFailed { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bpscal", version, about = "Bishop-Phelps conic scalarization toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Problem file (JSON).
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall-clock timing (makes reports non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args, Clone, Default)]
pub struct PairArgs {
    /// Comma-separated x*.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub xstar: Option<Point>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Subcommand, Clone)]
pub enum Command {
    /// Minimise a scalarizing functional over the feasible images.
    SolveScalar {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        phi: Phi,
        #[command(flatten)]
        pair: PairArgs,
        /// Reference point (default: origin).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        a: Option<Point>,
        /// Gerstewitz direction.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        k: Option<Point>,
    },
    /// Brute-force solution sets.
    SolveVector {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = ConceptArg::Eff)]
        concept: ConceptArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Rays)]
        variant: VariantArg,
    },
    /// Augmented dual cone membership of (x*, α) plus monotonicity falsifiers.
    CheckCone {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Separation conditions and a separating pair for A(x̄) and K.
    Separate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        xbar: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Rays)]
        variant: VariantArg,
        /// Ask for weak instead of strict separation.
        #[arg(long)]
        weak: bool,
    },
    /// Run a theorem pipeline at the given (default: all proper) points.
    VerifyTheorems {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        xbar: Vec<String>,
    },
    /// Plot-ready table with every solution concept.
    Report {
        #[command(flatten)]
        common: Common,
        /// Which proper efficiency fills `in_peff`.
        #[arg(long, value_enum, default_value_t = ConceptArg::PeffA)]
        concept: ConceptArg,
        #[arg(long, value_enum)]
        phi: Option<Phi>,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        a: Option<Point>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        k: Option<Point>,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::SolveScalar { common, .. }
            | Command::SolveVector { common, .. }
            | Command::CheckCone { common, .. }
            | Command::Separate { common, .. }
            | Command::VerifyTheorems { common, .. }
            | Command::Report { common, .. } => common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Phi {
    SeminormLinear,
    Gerstewitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConceptArg {
    Eff,
    Weff,
    PeffA,
    PeffHenig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Rays,
    RaysPlusK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Weff,
    Peff,
    Henig1,
    Henig2,
}

pub fn parse_point(s: &str) -> Result<Point, String> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| format!("{c:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Point::new(coords).map_err(|e| e.to_string())
}

/// Parses `args`, runs the command, writes the report and returns the exit
/// code. Diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("bpscal: error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let common = cli.command.common();
    let report = run(&cli.command)?;
    let mut bytes = Vec::new();
    match common.format {
        Format::Json => bytes.extend_from_slice(report.to_json().as_bytes()),
        Format::Csv => report.write_csv(&mut bytes)?,
    }
    match &common.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => std::io::stdout().write_all(&bytes).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?,
    }
    for note in &report.notes {
        eprintln!("bpscal: {note}");
    }
    Ok(report.outcome.exit_code())
}
