mod args;
mod commands;
mod output;

use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use thiserror::Error;

use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] modulilog::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let report = commands::run(&cli.command, &cli.config)?;
    let text = report.render(cli.config.format)?;
    match &cli.config.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // downstream reader closed early, e.g. `| head`
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let stderr = std::io::stderr();
            if stderr.is_terminal() {
                eprintln!("error: {e}");
            } else {
                let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
                eprintln!("{body}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
