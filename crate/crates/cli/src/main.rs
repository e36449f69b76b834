//! `prdesign`: command-line front end for the prdesign library.

mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use error::CliError;

fn emit(cli: &Cli, data: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(data.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("prdesign: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match commands::run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("prdesign: {e}");
            return ExitCode::from(e.status());
        }
    };
    if let Err(e) = emit(&cli, &report.data) {
        eprintln!("prdesign: {e}");
        return ExitCode::from(e.status());
    }
    match report.failure {
        None => ExitCode::SUCCESS,
        Some(why) => {
            eprintln!("prdesign: verification failed:\n{why}");
            ExitCode::from(1)
        }
    }
}
