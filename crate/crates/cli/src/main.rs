//! `ladderlab`: build the ladder cache, verify hybrid formulas, run sweeps.
//!
//! Exit codes: 0 all checks within budget, 1 a budget violation or numerical
//! failure, 2 usage error, 3 cache missing or mismatched.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Overrides;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cache(String),
    #[error("{0} check(s) exceeded their budget")]
    Budget(usize),
}

#[derive(Parser)]
#[command(
    name = "ladderlab",
    version,
    about = "Zeta factorization laboratory on a Jacob's ladder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or confirm) the Φ checkpoint cache.
    LadderBuild(BuildArgs),
    /// Evaluate hybrid formulas and report residuals.
    Verify(VerifyArgs),
    /// Produce one factorization certificate.
    Certify(CertifyArgs),
    /// Deviation and gap diagnostics over a list of L.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
pub struct Common {
    /// Cache file; defaults to $LADDERLAB_CACHE.
    #[arg(long, env = "LADDERLAB_CACHE")]
    pub cache: Option<PathBuf>,
    /// Flat key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub k0: Option<usize>,
    #[arg(long)]
    pub l0: Option<u64>,
    #[arg(long)]
    pub correction_order: Option<u8>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            k0: self.k0,
            l0: self.l0,
            correction_order: self.correction_order,
        }
    }
}

#[derive(Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 200.0)]
    pub t0: f64,
    #[arg(long = "t-max", default_value_t = 6000.0)]
    pub t_max: f64,
}

#[derive(Args)]
#[group(id = "mode", multiple = false)]
pub struct Mode {
    /// JSON lines (default).
    #[arg(long)]
    pub json: bool,
    /// CSV with a header row.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Formula ids, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub formula: Vec<String>,
    #[arg(long = "L")]
    pub l: u64,
    #[arg(long = "U", default_value_t = 0.5)]
    pub u: f64,
    /// k, or a comma tuple such as 1,2,3.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub delta4: f64,
    #[arg(long, default_value_t = 2.0)]
    pub delta5: f64,
    #[command(flatten)]
    pub mode: Mode,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// f1, f2, f3, unit or power.
    #[arg(long)]
    pub family: String,
    /// Exponent of the power family.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long = "L")]
    pub l: u64,
    #[arg(long = "U", default_value_t = 0.5)]
    pub u: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[command(flatten)]
    pub mode: Mode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Explicit list of L.
    #[arg(long = "L", value_delimiter = ',', conflicts_with = "log_range")]
    pub l: Vec<u64>,
    /// LO:HI:N, N log-spaced values of L.
    #[arg(long = "log-range")]
    pub log_range: Option<String>,
    #[arg(long = "U", default_value_t = 0.5)]
    pub u: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "C18")]
    pub formula: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Usage(_) => 2,
            Failure::Cache(_) => 3,
            Failure::Budget(_) => 1,
        };
    }
    if let Some(e) = err.downcast_ref::<ladderlab::Error>() {
        use ladderlab::Error as E;
        return match e {
            // OutOfRange here means the ladder inverse ran past the cached table.
            E::CacheFormat { .. }
            | E::CacheMismatch { .. }
            | E::HeightAboveCache { .. }
            | E::OutOfRange { .. } => 3,
            E::BadU(_)
            | E::LTooSmall { .. }
            | E::BadK { .. }
            | E::EqualDeltas(_)
            | E::UnequalK(_)
            | E::InvalidParameter(_)
            | E::HeightTooLow { .. }
            | E::RangeTooLarge { .. } => 2,
            _ => 1,
        };
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::LadderBuild(a) => commands::ladder_build(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Certify(a) => commands::certify(&a),
        Command::Sweep(a) => commands::sweep(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("ladderlab: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
