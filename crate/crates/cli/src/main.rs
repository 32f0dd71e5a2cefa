//! `polyframe`: sample, measure, morph, tile, lift and render polygons.

mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return report(&CliError::Usage(e.kind().to_string()));
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> ExitCode {
    eprintln!(
        "{{\"error\":\"{}\",\"message\":{}}}",
        e.category(),
        serde_json::to_string(&e.to_string()).unwrap_or_else(|_| "\"\"".into())
    );
    ExitCode::from(e.exit_code())
}
