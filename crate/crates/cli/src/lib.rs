//! Batch front end for `eqcurve-core`: reads a JSON problem configuration,
//! runs classification, smoothness checks, curve search or certificate
//! verification, and writes a deterministic JSON report.
//!
//! Exit codes: 0 success, 1 search exhausted or verification failed,
//! 2 invalid input.

pub mod commands;
pub mod config;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use eqcurve_core::{ActionError, CriteriaError, CurveError, LinsysError};
use thiserror::Error;

use crate::config::{Overrides, ProblemConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "eqcurve",
    version,
    about = "Equivariant rational curves on hypersurfaces with a cyclic action"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, clap::Args)]
pub struct Options {
    /// Problem configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Pair of coordinate points, as `i,j`.
    #[arg(long, global = true, value_parser = parse_pair)]
    pub pair: Option<(usize, usize)>,
    /// Primes for reduction, as `p[,p...]`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub prime: Option<Vec<u64>>,
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random members tried by the smoothness check when `F` is absent.
    #[arg(long, global = true)]
    pub trials: Option<u32>,
    /// Directory for certificate files.
    #[arg(long, global = true)]
    pub cert_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scenario flags and per-pair criteria.
    Classify,
    /// Invariant system through the pair (or all invariants) and its base locus.
    Basis,
    /// Jacobian-criterion smoothness over each prime.
    SmoothCheck,
    /// Certificate connecting the configured pair.
    FindCurve,
    /// Re-check a certificate file against the configuration.
    Verify { certificate: PathBuf },
    /// Graph of fixed points joined by certificates.
    Connectivity,
    /// Everything above in one report.
    Report,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let opts = &cli.opts;
    let path = opts.config.as_ref().ok_or_else(|| CliError::Invalid {
        field: "config".into(),
        message: "--config PATH is required".into(),
    })?;
    let mut config = ProblemConfig::load(path)?;
    config.apply(&Overrides {
        pair: opts.pair,
        primes: opts.prime.clone(),
        max_degree: opts.max_degree,
        budget: opts.budget,
        seed: opts.seed,
        trials: opts.trials,
    });
    let problem = config.validate()?;
    let cert_dir = opts.cert_dir.as_deref();
    match &cli.command {
        Command::Classify => commands::classify(&problem),
        Command::Basis => commands::basis(&problem),
        Command::SmoothCheck => commands::smooth_check(&problem),
        Command::FindCurve => commands::find_curve(&problem, cert_dir),
        Command::Verify { certificate } => commands::verify(&problem, certificate),
        Command::Connectivity => commands::connectivity_cmd(&problem, cert_dir),
        Command::Report => commands::report(&problem, cert_dir),
    }
}

/// Parses arguments, runs, writes output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Ok(outcome) => {
            let text =
                serde_json::to_string_pretty(&outcome.report).expect("serializable report") + "\n";
            let written = match &cli.opts.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            outcome.exit
        }
    }
}
