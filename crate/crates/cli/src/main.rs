use std::process::ExitCode;

use clap::Parser;
use prl_cli::args::Cli;
use prl_cli::{config, run};

fn main() -> ExitCode {
    let raw: Vec<_> = std::env::args_os().collect();
    if let Some(path) = config::config_path(&raw) {
        if let Err(e) = config::apply(&path) {
            eprintln!("prl: {e:#}");
            return ExitCode::from(1);
        }
    }
    let cli = Cli::parse_from(raw);
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("prl {}: a checked invariant failed; see the output", cli.command.name());
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("prl {}: {e:#}", cli.command.name());
            ExitCode::from(1)
        }
    }
}
