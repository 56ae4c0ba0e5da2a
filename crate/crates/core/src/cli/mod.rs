//! Command-line front end behind the `bcsl` binary.
//!
//! Exit codes: 0 success, 2 configuration error, 3 parameters off the
//! solvable point, 4 solver failure, 5 failed check.

pub mod commands;
pub mod config;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

pub use commands::{exit_code, SectorChoice};
pub use config::{Format, GridSpec, RunConfig, Spacing};
pub use table::{Cell, ResultTable};

#[derive(Debug, Parser)]
#[command(name = "bcsl", version, about = "Exact sectors of the dissipative BCS-Hubbard Liouvillian")]
pub struct Cli {
    /// Worker threads for sector evaluations (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML run configuration.
    pub config: PathBuf,

    /// Output file; overrides `output.path`. Use `-` for stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-particle spectrum of one sector.
    SolveSector {
        #[command(flatten)]
        common: Common,
        /// Comma-separated flipped sites.
        #[arg(long, value_delimiter = ',', conflicts_with = "flip_all")]
        flipped: Option<Vec<usize>>,
        /// Flip every charge.
        #[arg(long)]
        flip_all: bool,
    },
    /// Gap versus gamma with asymptotes.
    ZenoScan {
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force cross-checks on a small lattice.
    OracleCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Slowest flipped sector versus gamma.
    CrossingReport {
        #[command(flatten)]
        common: Common,
    },
    /// Stationary states and their residuals.
    SteadyState {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SolveSector { .. } => "solve-sector",
            Command::ZenoScan { .. } => "zeno-scan",
            Command::OracleCheck { .. } => "oracle-check",
            Command::CrossingReport { .. } => "crossing-report",
            Command::SteadyState { .. } => "steady-state",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::SolveSector { common, .. }
            | Command::ZenoScan { common }
            | Command::OracleCheck { common }
            | Command::CrossingReport { common }
            | Command::SteadyState { common } => common,
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("bcsl: {err}");
            exit_code(&err)
        }
    }
}

fn execute(cli: &Cli) -> Result<u8> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| dispatch(&cli.command))
}

fn dispatch(command: &Command) -> Result<u8> {
    let common = command.common();
    let config = RunConfig::load(&common.config)?;
    let (table, code) = match command {
        Command::SolveSector { flipped, flip_all, .. } => {
            let choice = match (flipped, flip_all) {
                (_, true) => SectorChoice::All,
                (Some(sites), false) => SectorChoice::Flipped(sites.clone()),
                (None, false) => SectorChoice::Unflipped,
            };
            (commands::solve_sector(&config, &choice)?, 0)
        }
        Command::ZenoScan { .. } => (commands::zeno_scan(&config)?, 0),
        Command::OracleCheck { .. } => {
            let (table, ok) = commands::oracle_check(&config)?;
            (table, if ok { 0 } else { exit_code(&Error::CheckFailed(String::new())) })
        }
        Command::CrossingReport { .. } => (commands::crossing_report(&config)?, 0),
        Command::SteadyState { .. } => (commands::steady_state(&config)?, 0),
    };
    let text = render(&config, command.name(), table)?;
    let path = common.output.clone().or_else(|| config.output.path.clone());
    write_output(path, &text)?;
    Ok(code)
}

/// Adds the provenance header and serializes.
pub fn render(config: &RunConfig, command: &str, mut table: ResultTable) -> Result<String> {
    let mut meta = vec![
        ("bcsl".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("command".to_string(), command.to_string()),
        ("config".to_string(), config.to_toml_string()?.trim_end().to_string()),
    ];
    meta.append(&mut table.metadata);
    table.metadata = meta;
    table.render(config.output.format, config.output.precision)
}

fn write_output(path: Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(&p, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display())))
        }
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from(["bcsl", "--workers", "2", "solve-sector", "run.toml", "--flipped", "1,3"]).unwrap();
        assert_eq!(cli.workers, Some(2));
        match cli.command {
            Command::SolveSector { flipped, flip_all, .. } => {
                assert_eq!(flipped, Some(vec![1, 3]));
                assert!(!flip_all);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Cli::try_parse_from(["bcsl", "solve-sector", "r.toml", "--flipped", "1", "--flip-all"]).is_err());
        assert!(Cli::try_parse_from(["bcsl", "zeno-scan"]).is_err());
        let cli = Cli::try_parse_from(["bcsl", "crossing-report", "r.toml", "-o", "out.csv"]).unwrap();
        assert_eq!(cli.command.name(), "crossing-report");
        assert_eq!(cli.command.common().output, Some(PathBuf::from("out.csv")));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidLattice("x".into())), 2);
        assert_eq!(exit_code(&Error::NonSolvable("x".into())), 3);
        assert_eq!(exit_code(&Error::Solver("x".into())), 4);
        assert_eq!(exit_code(&Error::CheckFailed("x".into())), 5);
    }
}
