//! Command-line front end: argument parsing, resolved configurations,
//! command execution and report writing.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::{CommandConfig, RunConfig};
use crate::error::CliError;
use crate::output::{emit, read_envelope, ReportEnvelope, TOOL, VERSION};

/// Exit status for a run whose diagnostics report non-convergence; the
/// report is still written.
pub const EXIT_NONCONVERGED: i32 = 3;

/// Resolves the command line into a configuration without computing anything.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let command = match &cli.command {
        Command::State(a) => CommandConfig::State(a.resolve()?),
        Command::Channel(a) => CommandConfig::Channel(a.resolve()?),
        Command::Table(a) => CommandConfig::Table(a.resolve()?),
        Command::Sweep(a) => CommandConfig::Sweep(a.resolve()?),
        Command::Random(a) => CommandConfig::Random(a.resolve()?),
        Command::Maxwehrl(a) => CommandConfig::Maxwehrl(a.resolve()?),
        Command::Replay(r) => {
            let mut config = read_envelope(&r.envelope)?.config;
            // Destination and worker count come from this invocation.
            config.format = cli.format;
            config.out = cli.out.clone();
            config.threads = cli.threads;
            return Ok(config);
        }
    };
    Ok(RunConfig { command, format: cli.format, out: cli.out.clone(), threads: cli.threads })
}

/// Runs a resolved configuration and builds its envelope.
pub fn execute(config: RunConfig, timestamp: bool) -> Result<(ReportEnvelope, output::CsvTable), CliError> {
    let outcome = commands::execute(&config.command)?;
    let timestamp = timestamp.then(|| {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
    });
    let env = ReportEnvelope {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        config,
        timestamp,
        payload: outcome.payload,
        diagnostics: outcome.diagnostics,
    };
    Ok((env, outcome.table))
}

fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // Fails only if a pool already exists (e.g. repeated calls in tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Entry point shared by the binary and the tests; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = resolve(&cli).and_then(|config| {
        configure_threads(config.threads)?;
        let (env, table) = execute(config, cli.timestamp)?;
        emit(&env, &table)?;
        Ok(env.diagnostics.converged)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("warning: numerical search did not converge; see diagnostics in the report");
            EXIT_NONCONVERGED
        }
        Err(e) => {
            eprintln!("spinphase: {e}");
            e.exit_code()
        }
    }
}
