//! Command implementations behind the `qwc` binary.
//!
//! Every command returns the complete text destined for standard output;
//! the binary prints it and maps errors to a one-line `qwc-error:` message on
//! standard error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::affinity::BiasMap;
use crate::dataset::{load_csv, normalize_minmax, CsvSchema, KnownDataset, LabeledDataset};
use crate::engine::{run, AlgoConfig, Variant};
use crate::error::{domain, Error, Result};
use crate::eval::{accuracy, benchmark_table, sweep, SweepGrid};
use crate::walk::{hadamard_walk, mcms_walk, scms_walk, CoinOperator, LatticeWalk, StepSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "qwc", version, about = "Quantum-walk clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster one data file and report labels as JSON.
    Cluster(ClusterArgs),
    /// Print an exact walk distribution as `position,probability` CSV.
    Walkdist(WalkdistArgs),
    /// Run every (k, r, seed) combination on one data file.
    Sweep(SweepArgs),
    /// Best-over-sweep accuracy on the UCI benchmark files.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Scms,
    Mcms,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Scms => Variant::Scms,
            VariantArg::Mcms => Variant::Mcms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Delimited data file.
    #[arg(long)]
    pub input: PathBuf,
    /// Label column (negative counts from the end).
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub label_col: i64,
    /// The file has no label column.
    #[arg(long, conflicts_with = "label_col")]
    pub no_labels: bool,
    /// Columns to drop, e.g. record ids.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub ignore_cols: Vec<i64>,
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// First line is a header.
    #[arg(long)]
    pub header: bool,
    #[arg(long, default_value = "?")]
    pub missing: String,
    /// Map every feature onto [0, 1] before clustering.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Merge clusters down to this count after convergence.
    #[arg(long)]
    pub target_clusters: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "mcms")]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 14)]
    pub k: usize,
    #[arg(long, default_value_t = 6)]
    pub r: u32,
    #[arg(long, env = "QWC_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WalkMode {
    Hadamard,
    Scms,
    Mcms,
}

#[derive(Debug, Clone, Args)]
pub struct WalkdistArgs {
    #[arg(long, value_enum)]
    pub mode: WalkMode,
    /// Number of walk steps (coins, for mcms).
    #[arg(long)]
    pub steps: Option<u32>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub etas: Vec<f64>,
    /// Signed displacement toward the neighbour.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Use steps of ±1 instead of fractions of the displacement.
    #[arg(long)]
    pub unit_steps: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "mcms")]
    pub variant: VariantArg,
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub ks: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "6")]
    pub rs: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub seeds: Vec<u64>,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Directory holding the UCI files under their usual names.
    #[arg(long)]
    pub datasets_dir: PathBuf,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "soybean,iris,sonar,glass,ionosphere,breast"
    )]
    pub datasets: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "scms,mcms")]
    pub variants: Vec<VariantArg>,
    #[arg(long, value_delimiter = ',', default_value = "5,8,11,14,17,20,23,26,29")]
    pub ks: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "5,6")]
    pub rs: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10")]
    pub seeds: Vec<u64>,
    /// Seed for missing-value imputation.
    #[arg(long, env = "QWC_SEED", default_value_t = 0)]
    pub data_seed: u64,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// Self-description embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

fn digest(path: &Path) -> Result<InputDigest> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

fn manifest(subcommand: &'static str, config: serde_json::Value, inputs: Vec<InputDigest>) -> RunManifest {
    RunManifest {
        subcommand,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config,
        inputs,
    }
}

fn load_input(args: &InputArgs, seed: u64) -> Result<LabeledDataset> {
    if !args.delimiter.is_ascii() {
        return Err(domain(format!("delimiter {:?} is not ASCII", args.delimiter)));
    }
    let schema = CsvSchema {
        delimiter: args.delimiter as u8,
        has_header: args.header,
        label_column: (!args.no_labels).then_some(args.label_col),
        ignore_columns: args.ignore_cols.clone(),
        missing_token: args.missing.clone(),
    };
    let data = load_csv(&args.input, &schema, seed)?;
    Ok(if args.normalize { normalize_minmax(&data) } else { data })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Consistency(format!("report serialisation failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Cluster(a) => cmd_cluster(&a),
        Command::Walkdist(a) => cmd_walkdist(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
}

pub fn cmd_cluster(args: &ClusterArgs) -> Result<String> {
    let data = load_input(&args.input, args.seed)?;
    let cfg = AlgoConfig {
        variant: args.variant.into(),
        k: args.k,
        r: args.r,
        epsilon: args.run.epsilon,
        theta: args.run.theta,
        seed: args.seed,
        max_iter: args.run.max_iter,
        target_clusters: args.run.target_clusters,
        bias_map: BiasMap::Affine,
    };
    let result = run(&data.features, &cfg)?;
    let acc = match &data.labels {
        Some(truth) => Some(accuracy(&result.labels, truth)?),
        None => None,
    };
    let manifest = manifest(
        "cluster",
        json!({ "run": result.config, "normalize": args.input.normalize }),
        vec![digest(&args.input.input)?],
    );
    to_json(&json!({
        "schema": SCHEMA_VERSION,
        "manifest": manifest,
        "dataset": data.provenance,
        "labels": result.labels,
        "cluster_count": result.cluster_count,
        "accuracy": acc,
        "iterations": result.iterations,
        "converged": result.converged,
        "omega_trace": result.omega_trace,
    }))
}

pub fn cmd_walkdist(args: &WalkdistArgs) -> Result<String> {
    let dist = match args.mode {
        WalkMode::Hadamard => {
            let steps = args.steps.ok_or_else(|| domain("--steps is required"))?;
            hadamard_walk(steps)?
        }
        WalkMode::Scms => {
            let rho = args.rho.ok_or_else(|| domain("--rho is required for scms"))?;
            let steps = args.steps.ok_or_else(|| domain("--steps is required"))?;
            if args.unit_steps {
                let coin = CoinOperator::biased(rho)?;
                unit_walk(steps, |_| coin)?
            } else {
                scms_walk(rho, args.delta, steps)?.distribution()
            }
        }
        WalkMode::Mcms => {
            if args.etas.is_empty() {
                return Err(domain("--etas is required for mcms"));
            }
            if let Some(s) = args.steps {
                if s as usize != args.etas.len() {
                    return Err(domain(format!(
                        "--steps {s} disagrees with {} coins in --etas",
                        args.etas.len()
                    )));
                }
            }
            if args.unit_steps {
                let coins = args
                    .etas
                    .iter()
                    .map(|&e| CoinOperator::biased(e))
                    .collect::<Result<Vec<_>>>()?;
                unit_walk(coins.len() as u32, |t| coins[t])?
            } else {
                mcms_walk(&args.etas, args.delta)?.distribution()
            }
        }
    };
    let mut buf = Vec::new();
    dist.write_csv(&mut buf)
        .map_err(|e| Error::Consistency(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| Error::Consistency(e.to_string()))
}

fn unit_walk(
    steps: u32,
    coin_at: impl Fn(usize) -> CoinOperator,
) -> Result<crate::walk::PositionDistribution> {
    if steps == 0 {
        return Err(domain("--steps must be at least 1"));
    }
    let mut walk = LatticeWalk::new();
    for t in 0..steps as usize {
        walk.step(&coin_at(t), &StepSpec::unit())?;
    }
    Ok(walk.state().distribution())
}

fn run_config(run: &RunArgs) -> AlgoConfig {
    AlgoConfig {
        epsilon: run.epsilon,
        theta: run.theta,
        max_iter: run.max_iter,
        target_clusters: run.target_clusters,
        ..AlgoConfig::default()
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<String> {
    let data_seed = args.seeds[0];
    let data = load_input(&args.input, data_seed)?;
    let grid = SweepGrid {
        ks: args.ks.clone(),
        rs: args.rs.clone(),
        seeds: args.seeds.clone(),
    };
    let base = run_config(&args.run);
    base.validate()?;
    let name = args
        .input
        .input
        .file_name()
        .map_or_else(|| "input".to_string(), |n| n.to_string_lossy().into_owned());
    let report = sweep(&name, &data, args.variant.into(), &grid, &base)?;
    if args.format == Format::Text {
        return Ok(report.to_text());
    }
    let manifest = manifest(
        "sweep",
        json!({ "grid": grid, "base": base, "data_seed": data_seed, "normalize": args.input.normalize }),
        vec![digest(&args.input.input)?],
    );
    to_json(&json!({ "schema": SCHEMA_VERSION, "manifest": manifest, "report": report }))
}

pub fn cmd_bench(args: &BenchArgs) -> Result<String> {
    let which = args
        .datasets
        .iter()
        .map(|s| s.parse::<KnownDataset>())
        .collect::<Result<Vec<_>>>()?;
    let missing: Vec<String> = which
        .iter()
        .map(|d| args.datasets_dir.join(d.file_name()))
        .filter(|p| !p.is_file())
        .map(|p| p.display().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(domain(format!("missing dataset files: {}", missing.join(", "))));
    }
    let mut loaded = Vec::with_capacity(which.len());
    let mut inputs = Vec::with_capacity(which.len());
    for d in &which {
        loaded.push((*d, d.load(&args.datasets_dir, args.data_seed)?));
        inputs.push(digest(&args.datasets_dir.join(d.file_name()))?);
    }
    let grid = SweepGrid {
        ks: args.ks.clone(),
        rs: args.rs.clone(),
        seeds: args.seeds.clone(),
    };
    let base = run_config(&args.run);
    base.validate()?;
    let variants: Vec<Variant> = args.variants.iter().map(|&v| v.into()).collect();
    let report = benchmark_table(&loaded, &variants, &grid, &base)?;
    if args.format == Format::Text {
        return Ok(report.to_text());
    }
    let manifest = manifest(
        "bench",
        json!({ "grid": grid, "base": base, "data_seed": args.data_seed, "variants": variants }),
        inputs,
    );
    to_json(&json!({ "schema": SCHEMA_VERSION, "manifest": manifest, "report": report }))
}

/// Short error category for the `qwc-error:` prefix.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Consistency(_) => "consistency",
        Error::Parse { .. } => "parse",
        Error::Io { .. } => "io",
        Error::Csv(_) => "csv",
    }
}
