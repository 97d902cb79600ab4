//! Batch front end for `skeletonkit`. Every subcommand maps JSON inputs to
//! JSON, DOT or ASCII reports; see [`run_with`] for the exit-code contract.

mod args;
mod commands;
mod error;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::Parser;
use rayon::prelude::*;

pub use args::{Cli, Format};
pub use error::CliError;

/// A rendered report, written verbatim followed by a newline if missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report(pub String);

/// Runs with the process's stdio.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdin, stdout, stderr) = (std::io::stdin(), std::io::stdout(), std::io::stderr());
    run_with(args, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// Exit codes: 0 success, 1 domain error, 2 malformed input or usage.
/// Errors are written to `stderr` as `{"error":{"code":..,"message":..}}`.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcomes = match execute(&cli, stdin) {
        Ok(outcomes) => outcomes,
        Err(e) => {
            write_error(stderr, &e, None);
            return e.exit_code();
        }
    };
    let mut buffer = Vec::new();
    let mut exit = 0;
    let many = outcomes.len() > 1;
    for (source, outcome) in outcomes {
        match outcome {
            Ok(Report(text)) => {
                buffer.extend_from_slice(text.as_bytes());
                if !text.ends_with('\n') {
                    buffer.push(b'\n');
                }
            }
            Err(e) => {
                write_error(stderr, &e, many.then_some(source.as_str()));
                exit = exit.max(e.exit_code());
            }
        }
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &buffer),
        None => stdout.write_all(&buffer).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let e = CliError::malformed("io", format!("cannot write output: {e}"));
        write_error(stderr, &e, None);
        return 2;
    }
    exit
}

fn write_error(stderr: &mut dyn Write, e: &CliError, source: Option<&str>) {
    let mut body = serde_json::json!({ "code": e.code, "message": e.message });
    if let Some(source) = source {
        body["input"] = source.into();
    }
    let _ = writeln!(stderr, "{}", serde_json::json!({ "error": body }));
}

type Outcome = (String, Result<Report, CliError>);

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Vec<Outcome>, CliError> {
    let handler = match commands::prepare(cli)? {
        commands::Handler::Standalone(result) => {
            if !cli.input.is_empty() {
                return Err(CliError::malformed("unexpected_input", "this subcommand takes no --input"));
            }
            return Ok(vec![("-".into(), result)]);
        }
        commands::Handler::PerInput(handler) => handler,
    };
    if cli.input.is_empty() {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| CliError::malformed("io", format!("cannot read stdin: {e}")))?;
        return Ok(vec![("-".into(), handler(&text))]);
    }
    if cli.jobs == 0 {
        return Err(CliError::malformed("bad_jobs", "--jobs must be at least 1"));
    }
    let process = |path: &PathBuf| {
        let name = path.display().to_string();
        let result = std::fs::read_to_string(path)
            .map_err(|e| CliError::malformed("io", format!("cannot read {name}: {e}")))
            .and_then(|text| handler(&text));
        (name, result)
    };
    if cli.jobs == 1 {
        return Ok(cli.input.iter().map(process).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::domain("thread_pool", e))?;
    Ok(pool.install(|| cli.input.par_iter().map(process).collect()))
}
