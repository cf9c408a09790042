//! `fairshare`: solve fair-allocation problems with transfers, check the
//! solution axioms, and estimate large instances by Monte-Carlo sampling.

mod commands;
mod file;
mod output;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

/// A command failure with its process exit code: 2 for parse and usage
/// errors, 3 for infeasible parameters. Axiom violations exit 1 via the
/// check command's return value.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn infeasible_from(e: fairshare_core::Error) -> Self {
        CliError::infeasible(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "fairshare",
    version,
    about = "Fair allocations with transfers: the Shapley value of the stand-alone game, \
             a surplus variant, EANS/ESIL, and an axiom-checking harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and report solution, claims, and transfers
    Solve(commands::SolveArgs),
    /// Check solution axioms on a problem file (exit 1 on any violation)
    Check(commands::CheckArgs),
    /// Monte-Carlo Shapley estimate for oracle-backed applications
    Estimate(commands::EstimateArgs),
    /// Rewrite a problem file in canonical generator form
    Convert(commands::ConvertArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Check(args) => commands::check(args),
        Command::Estimate(args) => commands::estimate(args),
        Command::Convert(args) => commands::convert(args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
