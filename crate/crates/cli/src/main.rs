//! `fodepth`: batch front end. Every subcommand writes a JSON run report to
//! stdout or `--out`. Exit codes: 0 when every check passes, 1 when a check
//! fails, 2 on usage errors and unusable input.

mod commands;

use clap::Parser;
use commands::Cli;
use std::process::ExitCode;
use std::time::Instant;

/// Errors that mean the invocation itself was wrong.
fn is_usage_error(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<std::io::Error>().is_some() || e.downcast_ref::<commands::UsageError>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<fodepth::Error>(),
        Some(
            fodepth::Error::InvalidArgument(_)
                | fodepth::Error::Parse { .. }
                | fodepth::Error::SizeLimit(_)
                | fodepth::Error::Unsupported(_)
        )
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let out = cli.out.clone();
    match commands::run(cli.command) {
        Ok(report) => {
            let report = report.with_wall_time(start.elapsed().as_millis() as u64);
            let text = report.to_json();
            let written = match &out {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
