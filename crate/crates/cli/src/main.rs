//! `qcvol`: sampling, volume estimation, closed-form curves and validation
//! runs for uniformly random qubit channels.
//!
//! Exit codes: 0 success, 1 statistical failure (validation commands), 2
//! usage or I/O error.

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match config::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = config::RunConfig::from(cli);
    match commands::run(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
