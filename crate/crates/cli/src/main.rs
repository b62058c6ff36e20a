mod commands;
mod config;
mod output;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use crate::commands::EXIT_USAGE;
use crate::config::{Cli, Command, RunConfig};

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = RunConfig::resolve(cli.common)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.get())
        .build_global()
        .context("starting the worker pool")?;
    match cli.command {
        Command::Index => commands::index(&cfg),
        Command::Scan { range, witness_out } => commands::scan(&cfg, range, witness_out),
        Command::NearTies { n, top_k } => commands::near_ties(&cfg, n, top_k),
        Command::Verify { statement, trials } => commands::verify(&cfg, statement, trials),
        Command::Enum { kind, n } => commands::enumerate(&cfg, kind, n),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
