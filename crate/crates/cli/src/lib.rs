//! Command-line front end: dataset generation, scoring runs and report tables.

pub mod args;
pub mod commands;
pub mod config;
pub mod generator;

use args::{Cli, Command};

/// Run a parsed command, returning the process exit code. Errors are
/// reported as one line on standard error.
pub fn run(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Score(a) => commands::score(a),
        Command::Table(a) => commands::table(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", one_line(&format!("{e:#}")));
            commands::EXIT_FATAL
        }
    }
}

pub fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
