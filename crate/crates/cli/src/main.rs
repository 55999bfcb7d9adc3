//! Command-line front end: regenerate figure data, run single pipeline
//! stages with file chaining, or execute the verification suite.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical-accuracy
//! failure, 4 verification-suite failure.

mod checkcmd;
mod config;
mod csvio;
mod figures;
mod manifest;
mod runcmd;
mod svg;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use config::SimConfig;
use manifest::RunManifest;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Schema {
        path: String,
        expected: String,
        found: String,
    },
    Core(circlat::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::Schema {
                path,
                expected,
                found,
            } => write!(
                f,
                "schema mismatch in {path}: expected header {expected:?} (schema v1), found {found:?}"
            ),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<circlat::Error> for CliError {
    fn from(e: circlat::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) | CliError::Schema { .. } => 2,
            CliError::Core(circlat::Error::Domain(_)) => 2,
            CliError::Core(circlat::Error::Truncation(_)) => 2,
            CliError::Core(circlat::Error::Accuracy(_)) => 3,
            CliError::Core(circlat::Error::MissingState(_)) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "circlat",
    version,
    about = "Atom diffraction, trapping and interference on a circular optical lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Configuration file of flat `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV data and manifests.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Override a single key, e.g. --set pulse_area=4.5 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Additionally write simple SVG renderings of the figure data.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate the data behind one reference figure (1..=6).
    Fig { which: u8 },
    /// Run a single pipeline stage.
    Run { stage: Stage },
    /// Execute the verification suite and refresh all figure data.
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Kick,
    Evolve,
    Farfield,
    Bands,
    Radial,
}

impl Stage {
    fn name(self) -> &'static str {
        match self {
            Stage::Kick => "kick",
            Stage::Evolve => "evolve",
            Stage::Farfield => "farfield",
            Stage::Bands => "bands",
            Stage::Radial => "radial",
        }
    }
}

fn load_config(cli: &Cli) -> Result<SimConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => SimConfig::from_file(path)?,
        None => SimConfig::default(),
    };
    for kv in &cli.set {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.set(key.trim(), value.trim())?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let cfg = load_config(cli)?;
    let started = Instant::now();
    match &cli.command {
        Command::Fig { which } => {
            let result = figures::figure(*which, &cfg, &cli.out, cli.svg)?;
            let mut man = RunManifest::new(&format!("fig {which}"), cfg.resolved());
            man.outputs = result.files;
            man.warnings = result.warnings.clone();
            man.wall_time_s = started.elapsed().as_secs_f64();
            man.write(&cli.out.join(format!("fig{which}.manifest.json")))?;
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { stage } => {
            let result = match stage {
                Stage::Kick => runcmd::kick(&cfg, &cli.out)?,
                Stage::Evolve => runcmd::evolve(&cfg, &cli.out)?,
                Stage::Farfield => runcmd::farfield(&cfg, &cli.out)?,
                Stage::Bands => runcmd::bands(&cfg, &cli.out)?,
                Stage::Radial => runcmd::radial(&cfg, &cli.out)?,
            };
            let mut man = RunManifest::new(&format!("run {}", stage.name()), cfg.resolved());
            man.outputs = result.files;
            man.warnings = result.warnings.clone();
            man.wall_time_s = started.elapsed().as_secs_f64();
            man.write(&cli.out.join(format!("run_{}.manifest.json", stage.name())))?;
            for w in &result.warnings {
                eprintln!("warning: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check => {
            let outcome = checkcmd::run(&cfg, &cli.out, cli.svg)?;
            let all_passed = outcome.reports.iter().all(|r| r.passed);
            let mut man = RunManifest::new("check", cfg.resolved());
            man.outputs = outcome.files;
            man.warnings = outcome.warnings;
            man.checks = outcome.reports.iter().map(Into::into).collect();
            man.wall_time_s = started.elapsed().as_secs_f64();
            man.write(&cli.out.join("check.manifest.json"))?;
            if all_passed {
                println!("all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("some checks FAILED");
                Ok(ExitCode::from(4))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
