mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, PatternsCommand, VerifyCommand};
use commands::Failure;

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::CheckLemmas(a) => commands::check_lemmas(a),
        Command::Ball(a) => commands::ball(a),
        Command::Growth(a) => commands::growth(a),
        Command::Verify(VerifyCommand::Reduction(a)) => commands::reduction(a),
        Command::Verify(VerifyCommand::Basictool(a)) => commands::basic_tool(a),
        Command::Verify(VerifyCommand::Patterns(a)) => commands::patterns(a),
        Command::Patterns(PatternsCommand::Verify(a)) => commands::patterns(a),
        Command::Badstrings(a) => commands::badstrings(a),
        Command::Badcount(a) => commands::badcount(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wreath: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
