//! Batch driver: kappa estimates, family scans, Siegel-zero scans, bound
//! envelopes and Mertens sums, written as CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed job files, unwritable outputs.
    Config(String),
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(m) => write!(f, "computation error: {m}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "artin-kappa", version, about = "Leading coefficients of Artin L-functions at s = 1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate kappa for characters of one field.
    Kappa,
    /// Estimate kappa across a family of fields.
    ScanFamily,
    /// Scan quadratic Dirichlet L-functions for real zeros near 1.
    SiegelScan,
    /// Compare kappa against the bound envelopes across a family.
    VerifyBounds,
    /// Sums of 1/N(p) over prime ideals with norm in (y, x].
    Mertens,
}

#[derive(Debug, clap::Args)]
pub struct Flags {
    /// JSON job file.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Truncation point; repeat for several.
    #[arg(long = "T", global = true)]
    pub t: Vec<f64>,
    /// JSON object mapping irreducible names to truncation points.
    #[arg(long = "T-map", global = true)]
    pub t_map: Option<PathBuf>,
    /// Output CSV; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Summary JSON for verify-bounds; defaults to the output path plus `.summary.json`.
    #[arg(long, global = true)]
    pub summary: Option<PathBuf>,
    /// Two-column plot data file.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Omit the timestamp line and zero the timing columns.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Report the truncation error as unmodeled.
    #[arg(long, global = true)]
    pub rigorous: bool,
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    #[arg(long, global = true)]
    pub c1: Option<f64>,
    #[arg(long, global = true)]
    pub c2: Option<f64>,
    #[arg(long, global = true)]
    pub c3: Option<f64>,
    #[arg(long, global = true)]
    pub c4: Option<f64>,
    #[arg(long, global = true)]
    pub c5: Option<f64>,
    /// Lower end of a single Mertens range.
    #[arg(long, global = true)]
    pub y: Option<f64>,
    /// Upper end of a single Mertens range.
    #[arg(long, global = true)]
    pub x: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("artin-kappa: {e}");
            ExitCode::from(e.code())
        }
    }
}
