//! `gcong`: classify, verify and export congruences of oriented geodesics.
//!
//! Exit codes: 0 success, 2 a requested check or `--expect` failed,
//! 64 bad flags or configuration, 65 numeric failure, 66 IO failure.

mod args;
mod commands;
mod config;
mod error;
mod output;

use args::{Cli, Command};
use clap::Parser;
use config::RunConfig;
use error::CliResult;

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Classify(a) => commands::classify(&RunConfig::from_args(&a)?),
        Command::Verify { which, chart } => commands::verify(which, &RunConfig::from_args(&chart)?),
        Command::Export { what, chart } => commands::export(what, &RunConfig::from_args(&chart)?),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("gcong: {e}");
        std::process::exit(e.exit_code());
    }
}
