//! `gcover`: run checks of the G-cover move calculus from a JSON config.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 for
//! usage or configuration errors.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcover_calculus::Schema;

use crate::commands::Report;
use crate::config::{output_path, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "gcover", version, about = "Move calculus for G-covers of genus-zero surfaces")]
struct Cli {
    /// Worker threads for searches and relation checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the seed (or the config's explicit seed) against the target.
    Validate(Common),
    /// Apply a path such as `Z@b0;B@b0#1;P@b0,x=1` and print every vertex.
    Apply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: String,
    },
    /// List the orbit of the start vertex under P and T moves.
    Orbit(Common),
    /// Check every relation instance at every vertex reachable within the bounds.
    VerifyRelations {
        #[command(flatten)]
        common: Common,
        /// Restrict to these schemas (repeatable), e.g. `--schema R17`.
        #[arg(long = "schema")]
        schemas: Vec<Schema>,
    },
    /// Build or verify the bounded 2-complex.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Compute the fiber over every base marking within the bounds.
    Fiber {
        #[command(flatten)]
        common: Common,
        /// Leave out T edges.
        #[arg(long)]
        no_t: bool,
    },
    /// Check the lifting squares of every Z, B and F base move.
    Lifting(Common),
    /// Print the start vertex, optionally after a path, as DOT or text.
    Export {
        format: ExportFormat,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        path: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexAction {
    /// Build the complex and report counts and per-schema cell tallies.
    Build {
        #[command(flatten)]
        common: Common,
        /// Write the vertex/edge/cell dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Build, then check connectivity against direct enumeration and decide π₁.
    Verify(Common),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ExportFormat {
    Dot,
    Text,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// JSON run configuration.
    #[arg(long, short)]
    config: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// A configuration or usage problem, reported with exit status 2.
struct UsageError(anyhow::Error);

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), UsageError> {
    let usage = UsageError;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| usage(e.into()))?;
    }
    let load = |c: &Common| RunConfig::load(&c.config).map_err(usage);
    let (report, common) = match &cli.command {
        Command::Validate(c) => (commands::validate(&load(c)?), c),
        Command::Apply { common, path } => (commands::apply(&load(common)?, path), common),
        Command::Orbit(c) => (commands::orbit(&load(c)?), c),
        Command::VerifyRelations { common, schemas } => (commands::verify_relations(&load(common)?, schemas), common),
        Command::Complex { action: ComplexAction::Build { common, dump } } => {
            (commands::complex_build(&load(common)?, dump.as_deref()), common)
        }
        Command::Complex { action: ComplexAction::Verify(c) } => (commands::complex_verify(&load(c)?), c),
        Command::Fiber { common, no_t } => (commands::fiber(&load(common)?, !no_t), common),
        Command::Lifting(c) => (commands::lifting(&load(c)?), c),
        Command::Export { format, common, path } => {
            (commands::export(&load(common)?, matches!(format, ExportFormat::Dot), path.as_deref()), common)
        }
    };
    Ok((report.map_err(usage)?, output_path(&common.output).map(PathBuf::from)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &report.text),
                None => std::io::stdout().write_all(report.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
