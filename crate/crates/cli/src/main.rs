mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use parity_psi_core::exec;

use commands::CliError;
use config::Cli;

const THREADS_VAR: &str = "PARITY_PSI_THREADS";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(v) = std::env::var(THREADS_VAR) {
        match v.parse::<usize>() {
            Ok(0) => exec::set_mode(exec::ExecMode::Sequential),
            Ok(k) => {
                exec::init_threads(k);
            }
            Err(_) => {
                eprintln!("error: {THREADS_VAR} must be a number, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    match commands::run(cli.command, &cli.opts) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.body.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification error: {msg}");
            ExitCode::from(1)
        }
    }
}
