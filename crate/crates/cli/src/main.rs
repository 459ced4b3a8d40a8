mod args;
mod commands;
mod config;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match commands::run(&cli, &mut out) {
        Ok(status) => status.code(),
        Err(err) => {
            let _ = out.flush();
            eprintln!("sylowcheck: {err}");
            match err {
                CliError::Usage(_) => commands::Status::Usage.code(),
                CliError::Compute(_) => commands::Status::Failed.code(),
                CliError::Io(_) => commands::Status::Failed.code(),
            }
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(commands::Status::Failed.code());
    }
    ExitCode::from(code)
}
