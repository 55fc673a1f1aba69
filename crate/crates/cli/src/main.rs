//! `ternary-ids`: batch front-end for the identity search.
//!
//! Results go to standard output (or `--out`), progress to standard error.
//! Exit codes: 0 success, 1 bad input, 2 invariant violation, 3 resource
//! failure.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "ternary-ids", version, about = "Polynomial identities of the ternary commutator")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Prime modulus for all modular linear algebra.
    #[arg(long, global = true, default_value_t = ternary_core::DEFAULT_PRIME)]
    pub prime: u32,
    /// Degree of the identities (5, 7, 9 or 11).
    #[arg(long, global = true, default_value_t = 11)]
    pub degree: usize,
    /// Largest representation dimension to run.
    #[arg(long, global = true, default_value_t = 45)]
    pub max_dim: u64,
    /// Explicit partitions, separated by ';' (e.g. "2^5 1;3,1^8").
    #[arg(long, global = true, value_delimiter = ';')]
    pub partitions: Vec<String>,
    /// Directory for cached representation matrices.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Repeat the rank computations with a second prime and compare.
    #[arg(long, global = true)]
    pub check_prime: bool,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ranks of the symmetry, lifting and all-identity spaces per partition.
    Table,
    /// Explicit new identity of one partition.
    Extract {
        #[arg(long, default_value = "2^5 1")]
        partition: String,
    },
    /// The multidegree a^2 b^2 c^2 d^2 e^2 f search.
    Multidegree {
        /// File receiving the new identity.
        #[arg(long, default_value = "identity.tsv")]
        identity: PathBuf,
    },
    /// Re-expands an identity file and checks that it vanishes.
    Verify { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let cfg = &cli.config;
    match cli.command {
        Command::Table => commands::table(cfg),
        Command::Extract { partition } => commands::extract(cfg, &partition),
        Command::Multidegree { identity } => commands::multidegree(cfg, &identity),
        Command::Verify { file } => commands::verify(cfg, &file),
    }
}
