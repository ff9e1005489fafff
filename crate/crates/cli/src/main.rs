use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = sh22_cli::Cli::parse();
    ExitCode::from(sh22_cli::run(&cli))
}
