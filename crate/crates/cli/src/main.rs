//! `normcomp`: compress, reduce, certify, search and fuzz from the shell.
//!
//! Every command writes one JSON document to stdout. Diagnostics go to
//! stderr. Exit codes: 0 success, 1 negative verdict, 2 bad input or
//! parameters, 3 internal-consistency failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use normcomp::compression::{compress, compress_m2, reduce_theorem1, PartitionedMatrix};
use normcomp::counterexamples::{
    m4_block_lift, schatten_example, thm2_necessity, thompson_search, CounterexampleReport, Param,
    DEFAULT_THOMPSON_SEED,
};
use normcomp::fuzz::{run_fuzz, FuzzConfig, FuzzMode};
use normcomp::norms::{condition_b, SchattenP, UINorm};
use normcomp::{to_json, Error, Execution, MatrixFile, NormCompression, DEFAULT_TOL};

#[derive(Parser)]
#[command(
    name = "normcomp",
    version,
    about = "Norm compressions of partitioned PSD matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a partitioned matrix under a norm and test the result for PSD.
    Check(CheckArgs),
    /// Run the three-block trace-norm reduction with all invariant checks.
    Reduce(ReduceArgs),
    /// Evaluate condition (b) for a norm at a given k.
    Certify(CertifyArgs),
    /// Build and certify a counterexample.
    Counterexample(CounterexampleArgs),
    /// Randomized property checks.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Block sizes, overriding the file's partition.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    #[arg(long, default_value = "trace")]
    norm: String,
    /// Dimension the norm lives on; defaults to the largest block.
    #[arg(long)]
    ambient: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct ReduceArgs {
    file: PathBuf,
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    norm: String,
    #[arg(long)]
    ambient: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = normcomp::norms::CONDITION_B_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Schatten,
    Thm2,
    Thompson,
    M4,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Schatten exponent (`inf` allowed), for `schatten`.
    #[arg(long, default_value = "2")]
    p: SchattenP,
    /// Norm spec, for `thm2` and `m4`.
    #[arg(long)]
    norm: Option<String>,
    #[arg(long)]
    ambient: Option<usize>,
    /// `n1,n2,n` for `thm2`.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Search budget for `thompson` and `m4`.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_THOMPSON_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    block_dim: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long)]
    mode: FuzzMode,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    norm: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Skip the full reduction in thm1 mode.
    #[arg(long)]
    no_reduction: bool,
    #[arg(long)]
    sequential: bool,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Failure of a command: an exit code and a message for stderr.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InternalConsistency { .. } => 3,
            Error::NotFound { .. } => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

/// JSON document plus exit code.
struct Output(String, u8);

fn emit<T: Serialize>(value: &T, code: u8) -> Output {
    Output(to_json(value), code)
}

fn load(file: &PathBuf, partition: Option<Vec<usize>>) -> Result<PartitionedMatrix, Failure> {
    let mf = MatrixFile::read(file)?;
    let a = mf.to_matrix()?;
    let sizes = partition
        .or(mf.partition)
        .ok_or_else(|| Failure(2, "no partition given and none in the file".into()))?;
    Ok(PartitionedMatrix::new(a, sizes)?)
}

#[derive(Serialize)]
struct CheckReport {
    partition: Vec<usize>,
    #[serde(flatten)]
    compression: NormCompression,
    determinant: f64,
}

fn check(args: CheckArgs) -> Result<Output, Failure> {
    let pm = load(&args.file, args.partition)?;
    let norm = UINorm::parse(&args.norm, args.ambient.unwrap_or(pm.max_block()))?;
    let compression = if pm.num_blocks() == 2 {
        compress_m2(&pm, &norm, args.tol)?
    } else {
        compress(&pm, &norm, args.tol)?
    };
    let code = if compression.verdict.is_psd { 0 } else { 1 };
    let report = CheckReport {
        partition: pm.sizes().to_vec(),
        determinant: compression.determinant(),
        compression,
    };
    Ok(emit(&report, code))
}

fn reduce(args: ReduceArgs) -> Result<Output, Failure> {
    let pm = load(&args.file, args.partition)?;
    Ok(emit(&reduce_theorem1(&pm, args.tol)?, 0))
}

fn certify(args: CertifyArgs) -> Result<Output, Failure> {
    let norm = UINorm::parse(&args.norm, args.ambient)?;
    Ok(emit(&condition_b(&norm, args.k, args.tol)?, 0))
}

fn seed_param(seed: u64) -> Param {
    match i64::try_from(seed) {
        Ok(v) => Param::Int(v),
        Err(_) => Param::Text(format!("{seed:#x}")),
    }
}

fn lifted(
    args: &CounterexampleArgs,
    kind: &str,
    norm: &UINorm,
) -> Result<CounterexampleReport, Failure> {
    let found = thompson_search(args.trials, args.seed, execution(args.sequential))?;
    let mut report = m4_block_lift(&found.b, args.block_dim, norm, args.tol)?;
    report.kind = kind.to_string();
    let params = &mut report.construction_params;
    params.insert("seed".into(), seed_param(found.seed));
    params.insert("trial".into(), seed_param(found.trial));
    params.insert(
        "abs_min_eigenvalue".into(),
        Param::from(found.abs_min_eigenvalue),
    );
    Ok(report)
}

fn counterexample(args: CounterexampleArgs) -> Result<Output, Failure> {
    let report = match args.kind {
        Kind::Schatten => schatten_example(args.p, args.tol)?,
        Kind::Thm2 => {
            let sizes = args
                .sizes
                .clone()
                .ok_or_else(|| Failure(2, "thm2 needs --sizes n1,n2,n".into()))?;
            let [n1, n2, n] = sizes[..] else {
                return Err(Failure(
                    2,
                    format!("--sizes needs three values, got {}", sizes.len()),
                ));
            };
            let spec = args.norm.as_deref().unwrap_or("op");
            let norm = UINorm::parse(spec, args.ambient.unwrap_or(n))?;
            thm2_necessity(&norm, n1, n2, n, args.tol)?
        }
        Kind::Thompson => lifted(&args, "thompson", &UINorm::trace(1))?,
        Kind::M4 => {
            let spec = args.norm.as_deref().unwrap_or("trace");
            let norm = UINorm::parse(spec, args.ambient.unwrap_or(args.block_dim))?;
            lifted(&args, "m4", &norm)?
        }
    };
    Ok(emit(&report, 0))
}

fn fuzz(args: FuzzArgs) -> Result<Output, Failure> {
    let mut config = FuzzConfig::new(args.mode, args.trials, args.seed);
    config.sizes = args.sizes;
    config.norm = args.norm;
    config.tol = args.tol;
    config.check_reduction = !args.no_reduction;
    let report = run_fuzz(&config, execution(args.sequential))?;
    if report.failures > 0 {
        eprintln!("{} of {} trials failed", report.failures, report.trials);
    }
    let code = if report.failures == 0 { 0 } else { 3 };
    Ok(emit(&report, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Reduce(a) => reduce(a),
        Command::Certify(a) => certify(a),
        Command::Counterexample(a) => counterexample(a),
        Command::Fuzz(a) => fuzz(a),
    };
    match result {
        Ok(Output(json, code)) => {
            println!("{json}");
            ExitCode::from(code)
        }
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
