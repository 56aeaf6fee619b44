//! `ssp`: reduce, verify, solve, build gadgets, lift and self-test.

mod commands;
mod failure;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subset_search::generate::DEFAULT_SEED;

use crate::report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "ssp", version, about = "Solution-preserving reductions and robust variants of subset search problems")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for generated fixtures.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Enumeration budget; defaults to 2^20 for verification and 2^22 for games.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Emit the report as a report-v1 JSON object.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a catalog reduction or a chain of them.
    Reduce {
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// Comma-separated reduction ids.
        #[arg(long)]
        via: Option<String>,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: String,
        #[arg(long)]
        emit_embedding: Option<String>,
    },
    /// Check solution preservation of a reduction on one instance.
    Verify {
        /// Catalog id, comma-separated chain, or `<reduction>@<family>`.
        #[arg(long)]
        reduction: String,
        #[arg(long = "in")]
        input: String,
    },
    /// Solve the game described by a variant file.
    Solve {
        #[arg(long)]
        game: String,
        #[arg(long = "in")]
        input: String,
    },
    /// Build the gadget instance for a quantified formula.
    Gadget {
        #[arg(long)]
        family: String,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: String,
    },
    /// Carry a variant instance through a reduction.
    Lift {
        #[arg(long)]
        reduction: String,
        #[arg(long)]
        family: String,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: String,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::iter::once("ssp".to_string()).chain(std::env::args().skip(1)).collect();
    let mut report = Report::new(echo);
    if let Err(failure) = commands::run(&cli, &mut report) {
        report.set("error", failure.to_string());
        let status = if failure.exit_code() == 5 { Status::BudgetExceeded } else { Status::Error };
        report.finish(status, failure.exit_code());
        eprintln!("ssp: {failure}");
    }
    let text = if cli.global.json { report.to_json() } else { report.to_text() };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit())
}
