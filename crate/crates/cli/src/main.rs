use std::process::ExitCode;

use clap::Parser;
use loewner_cli::args::Cli;

fn main() -> ExitCode {
    match loewner_cli::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("loewner: {}", e.message());
            ExitCode::from(e.code() as u8)
        }
    }
}
