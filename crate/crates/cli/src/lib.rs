//! `qprivacy`: divergences, privacy audits and bound curves from JSON input
//! documents.
//!
//! Exit codes: 0 success, 1 a counterexample pair was found, 2 input or
//! validation error, 3 numerical failure.

mod commands;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use qhtp::divergences::LogBase;

use output::EpsSweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at {location} ({check}): {message}")]
    Validation {
        location: String,
        check: String,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write output: {0}")]
    Sink(std::io::Error),
}

impl CliError {
    pub fn validation(location: &str, check: &str, message: impl std::fmt::Display) -> Self {
        CliError::Validation {
            location: location.to_string(),
            check: check.to_string(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }
}

impl From<qhtp::Error> for CliError {
    fn from(e: qhtp::Error) -> Self {
        use qhtp::Error::*;
        match e {
            NoConvergence { .. } | InfeasibleTolerance { .. } | NotPsd { .. } | TraceNotOne { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qprivacy", version, about = "Hypothesis-testing privacy and differential privacy for quantum channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairwise divergences and optimal tests on the channel outputs of every pair.
    Divergence(DivergenceArgs),
    /// Audit a channel for (ε, η)-privacy or (ε, δ)-differential privacy.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Bound curves as CSV.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Tensor two channels and audit the product at η = 0.
    Compose(ComposeArgs),
    /// Convert between privacy notions.
    #[command(subcommand)]
    Translate(TranslateCommand),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Logarithm base; overrides the document.
    #[arg(long)]
    pub base: Option<LogBase>,
    /// Random seed; overrides the document.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Type-I error allowance for the asymmetric test.
    #[arg(long, default_value_t = 0.0)]
    pub eta: f64,
    /// Also report the hockey-stick divergence at base^epsilon.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Prior of the first state; overrides the document.
    #[arg(long)]
    pub p_rho: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum AuditCommand {
    /// D^η(E(ρ) ‖ E(σ)) ≤ ε on every neighbouring pair.
    Ht(AuditHtArgs),
    /// tr(E(ρ) - base^ε E(σ))_+ ≤ δ on every neighbouring pair.
    Dp(AuditDpArgs),
}

#[derive(Debug, Args)]
pub struct AuditHtArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub eta: f64,
    #[arg(long)]
    pub epsilon: f64,
    /// Sampled pairs for trace-distance neighbourhoods.
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AuditDpArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// Lower bound on the symmetric error of an (ε, η)-private channel; one column per η.
    Gamma(GammaArgs),
    /// Lower bound on β_η under (ε, δ)-DP; one column per δ.
    Omega(OmegaArgs),
    /// Lower bound on the symmetric error under (ε, δ)-DP; one column per δ.
    Theta(ThetaArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CurveCommon {
    /// Sweep `MIN:MAX:STEPS`.
    #[arg(long, default_value = "0:3:121")]
    pub eps: EpsSweep,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = LogBase::Natural)]
    pub base: LogBase,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    /// Column values; repeat the flag for several curves.
    #[arg(long)]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub p_rho: f64,
    #[command(flatten)]
    pub curve: CurveCommon,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    #[arg(long)]
    pub delta: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    #[command(flatten)]
    pub curve: CurveCommon,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long)]
    pub delta: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub p_rho: f64,
    #[command(flatten)]
    pub curve: CurveCommon,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    /// Exactly two documents with explicit pairs.
    #[arg(long, num_args = 1, required = true)]
    pub input: Vec<PathBuf>,
    /// Budget for the product; defaults to the sum of the factors' worst D^0.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum TranslateCommand {
    /// (ε, η)-privacy to (ε, min(√(2η), 1))-DP.
    HtToDp(HtToDpArgs),
    /// (ε, 0)-DP to (ε, η)-privacy for every η.
    DpToHt(DpToHtArgs),
    /// Closed-form parameters of a depolarizing channel on a trace-distance neighbourhood.
    Depolarizing(DepolarizingArgs),
}

#[derive(Debug, Args)]
pub struct HtToDpArgs {
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub eta: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DpToHtArgs {
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DepolarizingArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Also report δ at this ε.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

impl std::fmt::Display for EpsSweep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.steps)
    }
}

/// Parses `args` (program name first) and executes the command. Reports go
/// to `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
