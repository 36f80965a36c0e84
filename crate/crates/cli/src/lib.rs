//! The `loewner` command line: argument and config handling, subcommands and figures.

pub mod args;
pub mod commands;
pub mod error;
pub mod svg;

use std::ffi::OsString;

use clap::Parser;
use serde_json::Value;

use args::{merge, Cli, Command};
use error::{CliError, CliResult};

fn load_config(cli: &Cli) -> CliResult<Option<Value>> {
    let Some(path) = &cli.config else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli) -> CliResult<()> {
    let config = load_config(&cli)?;
    let config = config.as_ref();
    let name = cli.command.name();
    match cli.command {
        Command::Trace(a) => commands::trace(merge(&a, config, name)?),
        Command::Drive(a) => commands::drive(merge(&a, config, name)?),
        Command::Energy(a) => commands::energy(merge(&a, config, name)?),
        Command::Sle(a) => commands::sle(merge(&a, config, name)?),
        Command::Schilder(a) => commands::schilder(merge(&a, config, name)?),
        Command::Wp(a) => commands::wp(merge(&a, config, name)?),
    }
}

/// Parses `argv` (program name first) and runs it. Usage errors map to exit code 2.
pub fn run_args<I, T>(argv: I) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::input(e.to_string()))?;
    run(cli)
}
