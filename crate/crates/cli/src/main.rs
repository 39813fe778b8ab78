mod cli;
mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use cli::Cli;

pub enum CliError {
    /// Bad flags or unreadable arguments: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Domain(wreathkit::Error),
    /// The report could not be written: exit 1.
    Io(String),
}

impl From<wreathkit::Error> for CliError {
    fn from(e: wreathkit::Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli.command, &cli.common).and_then(|(resolved, result)| {
        let params = json!({
            "args": serde_json::to_value(&cli).expect("arguments serialize"),
            "resolved": resolved,
        });
        let doc = output::report(cli.command.name(), params, result);
        let text = output::render(&doc, cli.common.format);
        match &cli.common.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            let (code, msg) = match e {
                CliError::Domain(e) => (e.code(), e.to_string()),
                CliError::Io(m) => ("Io", m),
                CliError::Usage(_) => unreachable!(),
            };
            let doc = output::error_object(code, &msg);
            println!("{}", serde_json::to_string_pretty(&doc).expect("errors serialize"));
            ExitCode::from(1)
        }
    }
}
