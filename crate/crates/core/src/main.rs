use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use grothendieck::cli::{run_command, Command, Options, EXIT_PARSE};

/// Verify and transform fixtures of enriched categories, pseudofunctors and
/// opfibrations.
///
/// Construction commands print the fixture they build on standard output and
/// the JSONL report on standard error; with `--emit` the fixture goes to the
/// file and the report to standard output. Other commands print the report on
/// standard output.
#[derive(Parser, Debug)]
#[command(name = "grothendieck", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Fixture file.
    fixture: PathBuf,
    /// Samples per property in `base-check`.
    #[arg(long, default_value_t = 50)]
    budget: usize,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the constructed fixture here.
    #[arg(long)]
    emit: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    let options = Options {
        budget: args.budget,
        seed: args.seed,
    };
    let outcome = run_command(args.command, &args.fixture, &options);
    let report = outcome.report.to_jsonl();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    match (&outcome.fixture, &args.emit) {
        (Some(fixture), Some(path)) => {
            if let Err(e) = std::fs::write(path, fixture) {
                let _ = writeln!(stderr, "cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_PARSE as u8);
            }
            let _ = stdout.write_all(report.as_bytes());
        }
        (Some(fixture), None) => {
            let _ = stdout.write_all(fixture.as_bytes());
            let _ = stderr.write_all(report.as_bytes());
        }
        (None, _) => {
            let _ = stdout.write_all(report.as_bytes());
        }
    }
    let _ = writeln!(
        stderr,
        "{} passed, {} failed",
        outcome.report.passed_count(),
        outcome.report.failed_count()
    );
    ExitCode::from(outcome.code as u8)
}
