//! `slicer` — command-line front end for slicer-map and Lévy-walk transport
//! simulations. Every simulation command writes plot-ready CSV files plus a
//! JSON manifest from which the run can be reproduced byte for byte.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use config::Config;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "slicer", version, about = "Slicer map lattice and quenched Lévy walk transport toolkit")]
struct Cli {
    /// Output directory (default: config `out_dir`, then $SLICER_OUT_DIR, then `.`)
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Worker thread cap; never affects results, only wall-clock time
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Flat key = value config file (keys: out_dir, threads, seed, max_seconds)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Wall-clock budget in seconds; exceeding it aborts with exit code 3
    #[arg(long, global = true)]
    max_seconds: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form coarse-grained distribution at a fixed time
    SlicerDist(commands::dist::DistArgs),
    /// Closed-form mean-square-displacement series
    SlicerMsd(commands::moments::MsdArgs),
    /// Closed-form moment series for several orders
    SlicerMoments(commands::moments::MomentsArgs),
    /// Monte Carlo ensemble of map trajectories
    Mc(commands::mc::McArgs),
    /// Quenched Lévy walk ensemble
    Levy(commands::levy::LevyArgs),
    /// Map-vs-walk exponent comparison report
    Compare(commands::compare::CompareArgs),
    /// Exact-layer verification: interval engine against closed forms
    Verify(commands::verify::VerifyArgs),
}

/// Wall-clock budget shared by the long-running commands.
pub struct Budget {
    start: Instant,
    cap: Option<Duration>,
}

impl Budget {
    fn new(cap_seconds: Option<f64>) -> Self {
        Self {
            start: Instant::now(),
            cap: cap_seconds.map(Duration::from_secs_f64),
        }
    }

    /// Errors out once the elapsed time exceeds the cap; called between
    /// phases of multi-phase commands.
    pub fn check(&self, phase: &str) -> Result<(), CliError> {
        if let Some(cap) = self.cap {
            if self.start.elapsed() > cap {
                return Err(CliError::Budget(format!(
                    "{phase}: {:.1}s elapsed, cap {:.1}s",
                    self.start.elapsed().as_secs_f64(),
                    cap.as_secs_f64()
                )));
            }
        }
        Ok(())
    }
}

/// Global run settings after merging flags, config file and environment.
pub struct Context {
    pub out_dir: PathBuf,
    pub config: Config,
    pub budget: Budget,
}

impl Context {
    /// Seed precedence: --seed flag > config `seed` > 1.
    pub fn resolve_seed(&self, flag: Option<u64>) -> Result<u64, CliError> {
        Ok(match flag {
            Some(s) => s,
            None => self.config.get_parsed::<u64>("seed")?.unwrap_or(1),
        })
    }
}

fn build_context(cli: &Cli) -> Result<Context, CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };

    let threads = match cli.threads {
        Some(t) => Some(t),
        None => config.get_parsed::<usize>("threads")?,
    };
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }

    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| config.get("out_dir").map(PathBuf::from))
        .or_else(|| std::env::var_os("SLICER_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    let max_seconds = match cli.max_seconds {
        Some(s) => Some(s),
        None => config.get_parsed::<f64>("max_seconds")?,
    };

    Ok(Context {
        out_dir,
        config,
        budget: Budget::new(max_seconds),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = build_context(&cli)?;
    match cli.command {
        Command::SlicerDist(args) => commands::dist::run(&ctx, args),
        Command::SlicerMsd(args) => commands::moments::run_msd(&ctx, args),
        Command::SlicerMoments(args) => commands::moments::run_moments(&ctx, args),
        Command::Mc(args) => commands::mc::run(&ctx, args),
        Command::Levy(args) => commands::levy::run(&ctx, args),
        Command::Compare(args) => commands::compare::run(&ctx, args),
        Command::Verify(args) => commands::verify::run(&ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
