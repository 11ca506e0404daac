//! `hyperlift`: lifts, bound reports and inequality checks from JSON specs.

mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperlift::LiftError;

/// Exit status for rejected input or flags.
const EXIT_VALIDATION: u8 = 2;
/// Exit status for failures of the numerical pipeline.
const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lift(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_VALIDATION,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hyperlift", version, about = "Lipschitz and C1 lifts of hyperbolic polynomial and eigenvalue curves")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lift a coefficient curve to root branches (branches.csv + lift.json).
    Lift(Args),
    /// Evaluate the Lipschitz bound quantities on nested intervals.
    Bounds(Args),
    /// Lift the eigenvalues of a symmetric matrix curve (branches.csv + matrix.json).
    Matrix(Args),
    /// Signed square root of a nonnegative function.
    Sos(Args),
    /// Run an interpolation-inequality suite on the given cases.
    Check(Args),
    /// Lift a sampled two-parameter family and compare Lipschitz constants.
    Grid2d(Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    C0,
    C1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Glaeser,
    Lagrange,
    Taylor,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// JSON input file.
    #[arg(long)]
    pub input: PathBuf,
    /// Number of grid points.
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Continuous (c0) or continuously differentiable (c1) lift.
    #[arg(long, value_enum, default_value_t = Mode::C0)]
    pub mode: Mode,
    /// Inner interval `a,b`.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    pub i0: Option<(f64, f64)>,
    /// Outer interval `a,b`.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    pub i1: Option<(f64, f64)>,
    /// Output directory (lift, matrix) or JSON file (other commands;
    /// standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Hyperbolicity tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Inequality suite for `check`.
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{}`: {e}", v.trim()));
    let (a, b) = (parse(a)?, parse(b)?);
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(format!("interval [{a}, {b}] must be finite with a < b"));
    }
    Ok((a, b))
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("HYPERLIFT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("HYPERLIFT_THREADS must be a non-negative integer, got `{raw}`")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {threads} worker threads: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Lift(a) => commands::lift(&a),
        Command::Bounds(a) => commands::bounds(&a),
        Command::Matrix(a) => commands::matrix(&a),
        Command::Sos(a) => commands::sos(&a),
        Command::Check(a) => suites::check(&a),
        Command::Grid2d(a) => commands::grid2d(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_VALIDATION) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
