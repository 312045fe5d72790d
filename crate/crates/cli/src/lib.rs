//! The `prl` command-line tool: argument surface, config layering, output
//! formats and their validators.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod validate;

use anyhow::Result;

use args::Command;

/// Run one parsed command. `Ok(false)` means the command finished but an
/// invariant it checks did not hold.
pub fn run(command: &Command) -> Result<bool> {
    match command {
        Command::Scan(a) => commands::run_scan(a),
        Command::Delta(a) => commands::run_delta(a),
        Command::Density(a) => commands::run_density(a),
        Command::Intervals(a) => commands::run_intervals(a),
        Command::Explicit(a) => commands::run_explicit(a),
        Command::Symdiff(a) => commands::run_symdiff(a),
        Command::Validate(a) => commands::run_validate(a),
    }
}
