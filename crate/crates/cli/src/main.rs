use std::process::ExitCode;

use clap::Parser;
use clusterscore_cli::args::Cli;
use clusterscore_cli::{commands, one_line, run};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments");
            eprintln!("{} (see --help)", one_line(first));
            return ExitCode::from(commands::EXIT_FATAL);
        }
    };
    ExitCode::from(run(&cli))
}
