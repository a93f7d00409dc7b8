//! `rclg`: line graphs, rainbow colourings with certified bounds, the exact
//! rc oracle and benchmark tables.
//!
//! Exit codes: 0 success, 2 verification failed, 3 input error, 4 resource limit.

mod bench;
mod commands;
mod error;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "rclg", version, about = "Rainbow colourings of line graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print L^k(G) as an edge list
    Linegraph(commands::LineGraphArgs),
    /// Build and verify a rainbow colouring for one of the four bounds
    Color(commands::ColorArgs),
    /// Check a colouring file for rainbow connectivity
    Verify(commands::VerifyArgs),
    /// Exact rainbow connection number by exhaustive search
    Exact(commands::ExactArgs),
    /// Packing statistics and every applicable upper bound
    Bound(commands::BoundArgs),
    /// Print a generated or loaded graph as an edge list
    Gen(commands::GenArgs),
    /// Table of bounds and verified colour counts over a random ensemble
    Bench(bench::BenchArgs),
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Linegraph(a) => commands::linegraph(a),
        Command::Color(a) => commands::color(a),
        Command::Verify(a) => commands::verify(a),
        Command::Exact(a) => commands::exact(a),
        Command::Bound(a) => commands::bound(a),
        Command::Gen(a) => commands::gen(a),
        Command::Bench(a) => bench::bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; clap's own code 2 means "not verified" here
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("rclg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
