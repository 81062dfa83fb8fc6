//! The `mps` binary: generate, verify, convert, and search most-perfect
//! magic squares from the command line.
//!
//! Exit codes: 0 on success (and on a verify that passes), 1 when verify
//! ran cleanly but the square fails the type-p test, 2 on usage or data
//! errors. Progress goes to standard error; results go to standard output
//! byte-deterministically for fixed inputs and flags.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mps_core::codec::ConstructionParams;
use mps_core::construction::{
    construction_matrix, diagonal_step, shifted_staircase, staircase, staircase_block,
};
use mps_core::error::Error;
use mps_core::search::{
    census_parallel, census_shard, SearchMode, SearchSpace, ShardOptions, DEFAULT_BUDGET,
};
use mps_core::square::{Square, SquareFormat};
use mps_core::verifier::verify_full;
use mps_core::zp::ZpMatrix;

/// Environment variable overriding the default search budget; the
/// `--budget` flag overrides both.
const BUDGET_ENV: &str = "MPS_SEARCH_BUDGET";

#[derive(Parser)]
#[command(name = "mps", version, about = "Most-perfect magic square toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Grid,
    Csv,
    Json,
}

impl From<Format> for SquareFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Grid => SquareFormat::GridText,
            Format::Csv => SquareFormat::Csv,
            Format::Json => SquareFormat::Json,
        }
    }
}

/// Which construction object to print. The short names follow the build
/// chain: the r x r staircase, its 2r x 2r block assembly, the shifted
/// assembly, the final construction matrix, and the diagonal step vector.
#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Lr,
    L,
    Ltilde,
    M,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    ExhaustiveAll,
    ExhaustiveNonsingular,
    RandomSample,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the square of order p^r and print it.
    Generate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Format::Grid)]
        format: Format,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Display symbols as 1..n^2 instead of 0..n^2-1 (grid format only).
        #[arg(long)]
        one_based: bool,
    },
    /// Check a square file and print its property report as JSON.
    Verify {
        /// Square in grid, CSV, or JSON form; matrix text with --matrix.
        input: PathBuf,
        /// Type parameter; defaults to the p recorded in the input.
        #[arg(long)]
        p: Option<u64>,
        /// Treat the input as a matrix and verify the square it builds.
        #[arg(long)]
        matrix: bool,
    },
    /// Print a construction matrix or the diagonal step vector.
    Matrix {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Census matrices over Z_p and report how many produce squares.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Mode::ExhaustiveAll)]
        mode: Mode,
        /// Sample size for random-sample mode.
        #[arg(long)]
        count: Option<u64>,
        /// Generator seed for random-sample mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate ceiling; overrides the MPS_SEARCH_BUDGET variable.
        #[arg(long)]
        budget: Option<u64>,
        /// Total shard count for a partitioned run.
        #[arg(long, requires = "shard")]
        shards: Option<u64>,
        /// This run's shard index, 0-based.
        #[arg(long, requires = "shards")]
        shard: Option<u64>,
        /// Cap on representative matrices embedded in the report.
        #[arg(long, default_value_t = 4)]
        representatives: usize,
        /// Checkpoint file to save to and resume from.
        #[arg(long, conflicts_with = "workers")]
        checkpoint: Option<PathBuf>,
        /// Candidates between checkpoint saves and progress lines.
        #[arg(long)]
        interval: Option<u64>,
        /// Worker threads for an in-process parallel census.
        #[arg(long, conflicts_with_all = ["shards", "shard"])]
        workers: Option<u64>,
    },
    /// Re-encode a square file into another format.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        one_based: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Generate {
            p,
            r,
            format,
            output,
            one_based,
        } => {
            let params = ConstructionParams::new(p, r)?;
            let square = Square::build(&construction_matrix(params), params)?;
            let text = match (format, one_based) {
                (Format::Grid, true) => square.to_grid_text(true),
                _ => square.serialize(format.into()),
            };
            emit(&text, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, p, matrix } => {
            let text = std::fs::read_to_string(&input)?;
            let (square, default_p) = if matrix {
                let m = ZpMatrix::parse_text(&text)?;
                if m.rows() % 2 != 0 {
                    return Err(Error::Malformed(format!(
                        "a construction matrix needs an even side, got {}",
                        m.rows()
                    )));
                }
                let params = ConstructionParams::new(m.modulus(), (m.rows() / 2) as u32)?;
                (Square::build(&m, params)?, Some(m.modulus()))
            } else {
                let sq = Square::deserialize(&text)?;
                let default_p = sq.params().map(|pr| pr.p());
                (sq, default_p)
            };
            let p = p.or(default_p).ok_or_else(|| {
                Error::Malformed("the input does not carry a type parameter; pass --p".into())
            })?;
            let report = verify_full(&square, p)?;
            emit(&report.to_json(), None)?;
            Ok(if report.is_type_p_mps {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Matrix {
            p,
            r,
            which,
            output,
        } => {
            let params = ConstructionParams::new(p, r)?;
            let text = match which {
                Which::Lr => staircase(params).to_text(),
                Which::L => staircase_block(params).to_text(),
                Which::Ltilde => shifted_staircase(params).to_text(),
                Which::M => construction_matrix(params).to_text(),
                Which::Delta => diagonal_step(params).to_text(),
            };
            emit(&text, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            p,
            r,
            mode,
            count,
            seed,
            budget,
            shards,
            shard,
            representatives,
            checkpoint,
            interval,
            workers,
        } => {
            let params = ConstructionParams::new(p, r)?;
            let mode = match mode {
                Mode::ExhaustiveAll => SearchMode::ExhaustiveAll,
                Mode::ExhaustiveNonsingular => SearchMode::ExhaustiveNonsingular,
                Mode::RandomSample => SearchMode::RandomSample {
                    count: count.ok_or_else(|| {
                        Error::Malformed("random-sample mode needs --count".into())
                    })?,
                    seed,
                },
            };
            let space = SearchSpace::new(params, mode)
                .with_budget(effective_budget(budget)?)
                .with_representative_cap(representatives);

            let result = if let Some(workers) = workers.filter(|&w| w > 1) {
                eprintln!("running {workers} workers");
                census_parallel(&space, workers)?
            } else {
                let (shard_index, shard_count) = match (shard, shards) {
                    (Some(i), Some(c)) => (i, c),
                    _ => (0, 1),
                };
                let options = ShardOptions {
                    checkpoint_path: checkpoint,
                    interval: interval.unwrap_or(0),
                    max_candidates: None,
                };
                let mut progress = |done: u64| {
                    eprintln!("shard {shard_index}/{shard_count}: {done} candidates processed");
                };
                census_shard(&space, shard_index, shard_count, &options, Some(&mut progress))?
            };
            emit(&result.to_json(), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert {
            input,
            to,
            output,
            one_based,
        } => {
            let square = Square::deserialize(&std::fs::read_to_string(&input)?)?;
            let text = match (to, one_based) {
                (Format::Grid, true) => square.to_grid_text(true),
                _ => square.serialize(to.into()),
            };
            emit(&text, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Budget precedence: flag, then environment variable, then the default.
fn effective_budget(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| Error::Malformed(format!("{BUDGET_ENV} must be an integer, got {raw:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Prints to standard output (with exactly one trailing newline) or writes
/// the text verbatim to a file.
fn emit(text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
        }
    }
    Ok(())
}
