//! `streamfold` command-line harness.
//!
//! ```text
//! streamfold bench primes [--num-values N] [--max-value M] [--repetitions R]
//!                         [--seed S] [--workers W] [--csv]
//! streamfold demo <ep7|ep8|ep9|ep10|ep11|ep12|ep13> [--file PATH]
//! ```

use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use streamfold::bench::{run_benchmark, BenchConfig, BenchError, ReportFormat};
use streamfold::demo::run_demo;

#[derive(Debug, Parser)]
#[command(
    name = "streamfold",
    version,
    about = "Stream pipeline demos and the parallel primes benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Timing experiments.
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
    /// Run one of the small stream demos.
    Demo {
        /// Demo id: ep7, ep8, ep9, ep10, ep11, ep12 or ep13.
        id: String,
        /// Input file for ep7, ep11, ep12 and ep13.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Count primes among random integers sequentially and in parallel.
    Primes(PrimesArgs),
}

#[derive(Debug, Args)]
struct PrimesArgs {
    #[arg(long, default_value_t = 2_000_000)]
    num_values: usize,
    #[arg(long, default_value_t = 10_000)]
    max_value: i64,
    #[arg(long, default_value_t = 5)]
    repetitions: usize,
    /// Seed for reproducible values; random when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Parallel worker count; defaults to the available hardware parallelism.
    #[arg(long)]
    workers: Option<NonZeroUsize>,
    /// Emit CSV rows instead of the text report.
    #[arg(long)]
    csv: bool,
}

impl From<PrimesArgs> for BenchConfig {
    fn from(args: PrimesArgs) -> Self {
        BenchConfig {
            num_values: args.num_values,
            max_value: args.max_value,
            repetitions: args.repetitions,
            seed: args.seed,
            workers: args.workers,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::BufWriter::new(io::stdout());
    let outcome: Result<(), (u8, String)> = match cli.command {
        Command::Bench {
            which: BenchCommand::Primes(args),
        } => {
            let format = if args.csv {
                ReportFormat::Csv
            } else {
                ReportFormat::Text
            };
            let cfg = BenchConfig::from(args);
            run_benchmark(&cfg, format, &mut out).map(drop).map_err(|e| {
                let code = match e {
                    BenchError::CountMismatch { .. } => 3,
                    _ => 1,
                };
                (code, e.to_string())
            })
        }
        Command::Demo { id, file } => run_demo(&id, file.as_deref(), &mut out).map_err(|e| (1, e.to_string())),
    };
    let _ = out.flush();
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
