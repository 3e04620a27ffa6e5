//! `lagline`: generate synthetic sessions, measure inter-market response
//! latency, and model microwave routes, end to end from the command line.

mod commands;
mod config;
mod output;
mod svg;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: unknown flags, missing inputs, malformed config.
    Usage(String),
    /// The inputs existed but could not be processed.
    Data(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "lagline",
    version,
    about = "Inter-market latency measurement and microwave route planning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic trading sessions with known injected latencies.
    Gen(commands::gen::GenArgs),
    /// Measure per-day response curves from session feeds.
    Respond(commands::respond::RespondArgs),
    /// Latency statistics, aggregates, and heat maps over measured curves.
    Stats(commands::stats_cmd::StatsArgs),
    /// Route-table metrics from aggregated route figures.
    MwTable(commands::mw::MwTableArgs),
    /// Plan microwave routes over synthetic tower corridors.
    MwPlan(commands::mw::MwPlanArgs),
    /// Reconstruct routes from license records.
    FccReconstruct(commands::fcc::FccArgs),
    /// Closed-form revenue and latency-capture estimates.
    Econ(commands::econ_cmd::EconArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen::run(args),
        Command::Respond(args) => commands::respond::run(args),
        Command::Stats(args) => commands::stats_cmd::run(args),
        Command::MwTable(args) => commands::mw::run_table(args),
        Command::MwPlan(args) => commands::mw::run_plan(args),
        Command::FccReconstruct(args) => commands::fcc::run(args),
        Command::Econ(args) => commands::econ_cmd::run(args),
    };
    if let Err(e) = result {
        eprintln!("lagline: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
