mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::Cli;

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{flag}: {msg}")]
    Input { flag: String, msg: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn input(flag: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Input {
            flag: flag.to_string(),
            msg: msg.to_string(),
        }
    }

    pub fn failed(msg: impl std::fmt::Display) -> Self {
        CliError::Failed(msg.to_string())
    }
}

/// A result plus whether the check or protocol it reports succeeded.
pub struct Report {
    pub json: Value,
    pub accepted: bool,
}

impl Report {
    pub fn ok(json: Value) -> Self {
        Self { json, accepted: true }
    }

    pub fn verdict(json: Value, accepted: bool) -> Self {
        Self { json, accepted }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok((report, out)) => {
            let text = serde_json::to_string_pretty(&report.json).expect("json") + "\n";
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("--out: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            print!("{text}");
            if report.accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
