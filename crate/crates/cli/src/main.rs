//! `pfcondense` command-line interface.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage or
//! parse error.

mod bench_cmd;
mod compute;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pfcondense::bench::Algorithm;
use pfcondense::Error;

#[derive(Parser, Debug)]
#[command(
    name = "pfcondense",
    version,
    about = "Pfaffian condensation, verification suites and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the Pfaffian (or determinant) of a matrix file with one or more algorithms.
    Compute(ComputeArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Time algorithms on seeded random matrices and fit log-log growth slopes.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScalarMode {
    Rational,
    Float,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// Comma-separated algorithms: expansion, elimination, glv, dtoda, dodgson, lambda-det.
    #[arg(long, value_delimiter = ',', default_value = "glv", value_parser = parse_algo)]
    pub algo: Vec<Algorithm>,
    /// Matrix file: `.skew` (order, then `i j value` lines) or `.mat` (order, then rows).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "rational")]
    pub scalar: ScalarMode,
    /// Relaxation factor (integer, decimal or p/q). Defaults: glv 1, dtoda −1, lambda-det −1.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// `ones`, `random:<seed>`, or a comma-separated list of 2N values (glv only).
    #[arg(long, default_value = "ones")]
    pub alpha: String,
    /// Seed of the parameter-resampling generator used on retries.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Retries after a zero divisor (default: 3 for glv, 2 for dtoda).
    #[arg(long)]
    pub retries: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Glv,
    Btoda,
    Dtoda,
    Dckp,
    Somos,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Random cases per check.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest level checked (n_max for the lattice suites, N for dckp).
    #[arg(long, default_value_t = 3)]
    pub size: usize,
    #[arg(long, value_enum, default_value = "rational")]
    pub scalar: ScalarMode,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "glv,dtoda,elimination", value_parser = parse_algo)]
    pub algo: Vec<Algorithm>,
    /// Matrix orders: `8,16,32` or `a..b[:step]` (step defaults to `a`).
    #[arg(long, default_value = "8..48", value_parser = parse_sizes)]
    pub sizes: SizeList,
    /// Timed samples per size; the median is reported.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "float")]
    pub scalar: ScalarMode,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeList(pub Vec<usize>);

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|e| e.to_string())
}

fn parse_sizes(s: &str) -> Result<SizeList, String> {
    let bad = || format!("invalid size list {s:?}; use `8,16,32` or `a..b[:step]`");
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, Some(step)),
            None => (rest, None),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        let step: usize = match step {
            Some(v) => v.trim().parse().map_err(|_| bad())?,
            None => lo,
        };
        if step == 0 || lo > hi {
            return Err(bad());
        }
        return Ok(SizeList((lo..=hi).step_by(step).collect()));
    }
    let sizes = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.is_empty() {
        return Err(bad());
    }
    Ok(SizeList(sizes))
}

/// Outcome of a command, mapped to the exit-code contract.
pub enum Failure {
    /// Checks ran but something did not hold, or a run failed (exit 1).
    Verification(String),
    /// Bad arguments or input (exit 2).
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::OddOrder(_)
            | Error::Shape(_)
            | Error::Parameter(_)
            | Error::Label(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute::run(&args),
        Command::Verify(args) => suites::run(&args),
        Command::Bench(args) => bench_cmd::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
