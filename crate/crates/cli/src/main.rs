//! `hooke`: branch tables, densities, entropy data and the sextic bridge.

mod commands;
mod config;
mod error;
mod output;
mod parse;

use clap::{Parser, Subcommand};

use crate::commands::{density, entropy, qes, solve, verify};
use crate::error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "hooke", version, about = "Exact states of the planar Hooke atom and their observables")]
struct Cli {
    /// `key=value` file merged under the command-line flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissible trap frequencies for polynomial states.
    Solve(solve::SolveArgs),
    /// Single-particle density profiles.
    Density(density::DensityArgs),
    /// Information entropy profiles, surfaces and scans.
    Entropy(entropy::EntropyArgs),
    /// Sextic oscillator mapping and variational estimates.
    #[command(subcommand)]
    Qes(qes::QesCommand),
    /// Run the self-test battery.
    Verify(verify::VerifyArgs),
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Density(a) => density::run(a),
        Command::Entropy(a) => entropy::run(a),
        Command::Qes(c) => qes::run(c),
        Command::Verify(a) => verify::run(a),
    }
}

fn main() {
    let args = match config::merge_config_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = dispatch(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
