use std::fs;
use std::process::ExitCode;

use clap::Parser;
use normdec::args::{selftest_config, Cli, Command};
use normdec::report::RunReport;
use normdec::run::{cmd_decompose, cmd_info, cmd_selftest, summary, CliError};

fn finish(result: Result<RunReport, CliError>, report: Option<&std::path::Path>) -> ExitCode {
    match result {
        Ok(r) => {
            println!("{}", summary(&r));
            if let Some(path) = report {
                if let Err(e) = fs::write(path, r.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if r.verdict.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Info(c) => match c.config() {
            Ok(cfg) => finish(cmd_info(&cfg), c.report.as_deref()),
            Err(e) => finish(Err(CliError::Input(e)), None),
        },
        Command::Decompose { theorem, common } => match common.config() {
            Ok(cfg) => finish(cmd_decompose(&cfg, theorem.into()), common.report.as_deref()),
            Err(e) => finish(Err(CliError::Input(e)), None),
        },
        Command::Selftest { corpus, dim, inject_mutation, seed, report } => {
            finish(cmd_selftest(&selftest_config(&corpus, dim, inject_mutation, seed)), report.as_deref())
        }
    }
}
