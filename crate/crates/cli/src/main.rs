use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gmpath::findim::{RadicalKind, DEFAULT_MAX_ORACLE_DIM, DEFAULT_SEED};
use gmpath_cli::{Options, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Radicals of path algebras, generalized matrix rings and pointed Hopf
/// algebras, with oracle cross-checks.
#[derive(Parser, Debug)]
#[command(name = "gmpath", version)]
struct Cli {
    /// Seed for every sampled check; recorded in the report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest algebra dimension handed to brute-force oracles.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORACLE_DIM)]
    max_oracle_dim: usize,
    /// Format written to standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write `report.txt` and `report.json` into this directory.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strong, weak and unilateral components, regular pairs and cycle facts.
    Connectivity {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Closed-form radical of a quiver, system or Hopf file.
    Radical {
        file: PathBuf,
        /// baer, levitzki, nil, jacobson or vn
        #[arg(value_parser = parse_kind)]
        kind: RadicalKind,
        /// Compare with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Edge lists `src dst [label]`, one arrow per line.
    NetIngest {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Every invariant suite over each file of a corpus directory.
    VerifySuite { dir: PathBuf },
}

fn parse_kind(s: &str) -> Result<RadicalKind, String> {
    s.parse().map_err(|e: gmpath::Error| e.to_string())
}

fn write_reports(dir: &PathBuf, report: &Report) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.txt"), report.text())?;
    std::fs::write(dir.join("report.json"), report.structured())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("gmpath".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let opts = Options {
        seed: cli.seed,
        max_oracle_dim: cli.max_oracle_dim,
    };
    let report = match &cli.command {
        Command::Connectivity { files } => gmpath_cli::connectivity(&echo, files, &opts),
        Command::Radical { file, kind, oracle } => {
            gmpath_cli::radical(&echo, file, *kind, *oracle, &opts)
        }
        Command::NetIngest { files } => gmpath_cli::net_ingest(&echo, files, &opts),
        Command::VerifySuite { dir } => gmpath_cli::verify_suite(&echo, dir, &opts),
    };
    match cli.format {
        Format::Text => print!("{}", report.text()),
        Format::Structured => print!("{}", report.structured()),
    }
    if let Some(dir) = &cli.out_dir {
        if let Err(e) = write_reports(dir, &report) {
            eprintln!("gmpath: cannot write reports to {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code())
}
