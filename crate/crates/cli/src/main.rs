mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csma_core::CsmaError;

#[derive(Debug, Parser)]
#[command(
    name = "csma",
    version,
    about = "Population-based bound-constrained minimizer and benchmark harness"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// JSON file with RunConfig/BatchConfig keys; flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Print machine-readable JSON instead of tables
    #[arg(long, global = true)]
    pub json: bool,
    /// Master seed [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for batch runs [default: available cores]
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the benchmark functions
    List {
        /// Only functions of this category (unimodal, multimodal, fixed-dimension)
        #[arg(long)]
        category: Option<String>,
    },
    /// Run the optimizer once on a benchmark function
    Run(RunArgs),
    /// Run repeated experiments and write summary tables
    Bench(BenchArgs),
    /// Friedman rank test over exported stats.json files
    Stats(StatsArgs),
    /// Dump a cumulative Brownian or Lévy walk as CSV
    Trace(TraceArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Function id, e.g. F1
    pub function: String,
    /// Problem dimension (F1–F13 only) [default: the function's own]
    #[arg(long)]
    pub dim: Option<usize>,
    /// Population size [default: 30]
    #[arg(long)]
    pub pop: Option<usize>,
    /// Iteration count [default: 500]
    #[arg(long)]
    pub iters: Option<u64>,
    /// Write the best-so-far trace as CSV
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also report the reference optimum and the gap to it
    #[arg(long)]
    pub runs_summary: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// `all`, a category, or a list such as F1,F5 or F1-F13 [default: all]
    #[arg(long)]
    pub functions: Option<String>,
    /// Independent runs per function [default: 20]
    #[arg(long)]
    pub runs: Option<usize>,
    /// Comma-separated optimizers: csma, random [default: csma]
    #[arg(long)]
    pub optimizers: Option<String>,
    /// Output directory for stats.csv, stats.json and traces/
    #[arg(long, default_value = "results")]
    pub out_dir: PathBuf,
    /// Population size [default: 30]
    #[arg(long)]
    pub pop: Option<usize>,
    /// Iteration count [default: 500]
    #[arg(long)]
    pub iters: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsMode {
    /// One test per function, blocks are runs
    PerFunction,
    /// One test per category, blocks are (function, run) pairs
    Category,
    /// One test over every selected function
    Pooled,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// stats.json files written by `bench`
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "per-function")]
    pub mode: StatsMode,
    /// Restrict to these functions (same syntax as `bench --functions`)
    #[arg(long)]
    pub functions: Option<String>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// brownian or levy
    pub kind: String,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// 2 or 3
    #[arg(long, default_value_t = 2)]
    pub dims: usize,
    /// Lévy index [default: 1.5]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Lévy step scale [default: 1.0]
    #[arg(long)]
    pub scale: Option<f64>,
    /// Output CSV [default: stdout]
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration; exit code 2.
    Usage(String),
    /// Failure while doing the work; exit code 1.
    Runtime(String),
}

impl CliError {
    /// Library errors about inputs are usage errors, the rest are runtime.
    pub fn from_core(e: CsmaError) -> Self {
        match e {
            CsmaError::InvalidConfig(_)
            | CsmaError::InvalidParameter(_)
            | CsmaError::InvalidInput(_)
            | CsmaError::UnknownFunction(_)
            | CsmaError::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `csma --help` for usage");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let file = match &cli.global.config {
        Some(path) => config::FileConfig::load(path)?,
        None => config::FileConfig::default(),
    };
    let g = &cli.global;
    match &cli.command {
        Command::List { category } => commands::list(g, category.as_deref()),
        Command::Run(args) => commands::run(g, &file, args),
        Command::Bench(args) => commands::bench(g, &file, args),
        Command::Stats(args) => commands::stats(g, args),
        Command::Trace(args) => commands::trace(g, &file, args),
    }
}
