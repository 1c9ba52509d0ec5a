//! Command-line surface over the gls-core library.
//!
//! Families come from a JSON config (see `gls_core::config`), frequency
//! vectors from a JSON map file, an inline `j,k:value` list, or the keywords
//! `uniform` / `lebesgue`. All results go to stdout as JSON (CSV where it
//! makes sense), diagnostics to stderr. Every subcommand is deterministic in
//! its arguments and seed.
//!
//! Exit codes: 0 success, 2 validation failure, 3 theorem-hypothesis failure
//! (weight/width domination or a zero driving marginal), 4 numerical
//! non-convergence.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gls_core::{
    codec, config, dimension, estimator, scheduler, Digit, ErrorCategory, FamilyConfig,
    FrequencyVector, GlsError, GlsFamily, Word,
};

#[derive(Parser)]
#[command(
    name = "gls",
    about = "Finite GLS number systems with redundancy: expansions, schedules, and level-set dimensions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a family config and check the domination hypothesis
    Validate(ValidateArgs),
    /// Dimension quantities of a (family, alpha) pair
    Dim(DimArgs),
    /// Encode a point into a digit word along a system sequence
    Encode(EncodeArgs),
    /// Decode a digit word to its cell midpoint and width bounds
    Decode(DecodeArgs),
    /// Build a word with prescribed digit frequencies
    Schedule(ScheduleArgs),
    /// Weave per-system schedules along a fixed system sequence
    Weave(WeaveArgs),
    /// Sample point clouds and estimate dimensions empirically
    Estimate(EstimateArgs),
    /// Topological pressure, pointwise or minimized over perturbations
    Pressure(PressureArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Family config JSON
    #[arg(long)]
    config: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DimMode {
    Closed,
    Variational,
    Lyapunov,
    Fibre,
    All,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long)]
    config: PathBuf,
    /// Frequency vector: JSON map file, inline "j,k:v; ...", or uniform/lebesgue
    #[arg(long)]
    alpha: String,
    #[arg(long, value_enum, default_value = "all")]
    mode: DimMode,
    /// Tolerance of the variational root solver
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long)]
    config: PathBuf,
    /// System sequence, e.g. "0,1,0,1"
    #[arg(long)]
    jseq: String,
    /// Point of the unit interval to encode
    #[arg(long)]
    x: f64,
    /// Number of digits (defaults to the length of --jseq)
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    config: PathBuf,
    /// Word as JSON pairs `[[0,1],[0,1]]`, or a path to such JSON
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Family config (required unless --weights is used)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Frequency vector over the family digits
    #[arg(long)]
    alpha: Option<String>,
    /// Abstract weights "1/2,1/3,1/6" for a bare ordered alphabet
    #[arg(long, conflicts_with_all = ["config", "alpha"])]
    weights: Option<String>,
    #[arg(long)]
    depth: usize,
}

#[derive(Args)]
struct WeaveArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    jseq: String,
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimateTarget {
    /// Two-dimensional level set
    Level,
    /// One-dimensional fibre along a sampled driving coding
    Fibre,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    alpha: String,
    #[arg(long, value_enum, default_value = "level")]
    target: EstimateTarget,
    /// Word depth per sample
    #[arg(long, default_value_t = 12)]
    depth: usize,
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated decreasing scales; defaults to powers of the coarsest
    /// branch width
    #[arg(long)]
    scales: Option<String>,
    /// Also write the sampled cloud as CSV (w,x rows)
    #[arg(long)]
    cloud_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PressureArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    alpha: String,
    /// Singular-value exponent in [0, 2]
    #[arg(long)]
    s: f64,
    /// Perturbation vector in digit order, e.g. "0.1,-0.2,..." (default 0)
    #[arg(long)]
    q: Option<String>,
    /// Minimize over q instead of evaluating at --q
    #[arg(long, default_value_t = false)]
    inf: bool,
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<GlsError>()
                .map(|e| match e.category() {
                    ErrorCategory::Validation => 2,
                    ErrorCategory::Hypothesis => 3,
                    ErrorCategory::Numerical => 4,
                })
                .unwrap_or(2);
            ExitCode::from(code)
        }
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Validate(args) => cmd_validate(args),
        Command::Dim(args) => cmd_dim(args),
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Schedule(args) => cmd_schedule(args),
        Command::Weave(args) => cmd_weave(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Pressure(args) => cmd_pressure(args),
    }
}

fn load_family(path: &Path) -> Result<GlsFamily> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let config = FamilyConfig::from_json(&text)?;
    Ok(config.build()?)
}

fn load_alpha(family: &GlsFamily, source: &str) -> Result<FrequencyVector> {
    match source {
        "uniform" => Ok(FrequencyVector::uniform(family)),
        "lebesgue" => Ok(FrequencyVector::lebesgue(family)),
        _ => {
            let path = Path::new(source);
            if path.is_file() {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read alpha {}", path.display()))?;
                let map: BTreeMap<String, config::NumberOrRatio> = serde_json::from_str(&text)
                    .map_err(|e| GlsError::ConfigValue(e.to_string()))?;
                Ok(config::alpha_from_map(family, &map)?)
            } else {
                Ok(config::alpha_from_inline(family, source)?)
            }
        }
    }
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| anyhow::anyhow!("bad index {t:?}: {e}"))
        })
        .collect()
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| Ok(config::NumberOrRatio::Ratio(t.trim().to_string()).to_f64()?))
        .collect()
}

fn parse_word(family: &GlsFamily, source: &str) -> Result<Word> {
    let text = if source.trim_start().starts_with('[') {
        source.to_string()
    } else {
        fs::read_to_string(source).with_context(|| format!("cannot read word {source}"))?
    };
    let pairs: Vec<(usize, usize)> =
        serde_json::from_str(&text).map_err(|e| GlsError::ConfigValue(e.to_string()))?;
    Ok(Word::new(
        family,
        pairs.into_iter().map(|(j, k)| Digit::new(j, k)).collect(),
    )?)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let domination = family.check_domination();
    if !domination.holds {
        eprintln!(
            "warning: weights do not dominate the branch widths; \
             level-set dimension formulas do not apply to this family"
        );
    }
    print_json(&json!({
        "valid": true,
        "systems": family.system_count(),
        "digits": family.digit_count(),
        "domination": domination,
    }))
}

fn cmd_dim(args: DimArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let alpha = load_alpha(&family, &args.alpha)?;
    match args.mode {
        DimMode::Closed => {
            let (dim, branch) = dimension::dim_level_set_with_branch(&family, &alpha)?;
            print_json(&json!({ "dim_level_set": dim, "branch": branch }))
        }
        DimMode::Lyapunov => {
            let (chi1, chi2) = dimension::chi(&family, &alpha)?;
            let (dim, branch) = dimension::dim_level_set_with_branch(&family, &alpha)?;
            print_json(&json!({
                "entropy": dimension::entropy(&family, &alpha),
                "chi1": chi1,
                "chi2": chi2,
                "lyapunov_dim": dim,
                "branch": branch,
            }))
        }
        DimMode::Variational => {
            let dim = dimension::dim_variational(&family, &alpha, args.tol)?;
            print_json(&json!({ "dim_variational": dim, "tol": args.tol }))
        }
        DimMode::Fibre => {
            alpha.require_positive_marginals()?;
            print_json(&json!({ "dim_fibre": dimension::dim_fibre(&family, &alpha) }))
        }
        DimMode::All => {
            let report = dimension::report(&family, &alpha, Some(args.tol))?;
            print_json(&report)
        }
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let jseq = parse_usize_list(&args.jseq)?;
    let depth = args.depth.unwrap_or(jseq.len());
    let word = codec::encode(&family, &jseq, args.x, depth)?;
    print_json(&word)
}

fn cmd_decode(args: DecodeArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let word = parse_word(&family, &args.word)?;
    let point = codec::decode(&family, &word)?;
    match args.format {
        Format::Json => print_json(&point),
        Format::Csv => {
            println!("w,x,w_width,x_width");
            println!(
                "{},{},{},{}",
                point.w, point.x, point.w_width, point.x_width
            );
            Ok(())
        }
    }
}

fn cmd_schedule(args: ScheduleArgs) -> Result<()> {
    if let Some(weights) = &args.weights {
        let weights = parse_f64_list(weights)?;
        let sequence = scheduler::schedule_weights(&weights, args.depth)?;
        let labels: Vec<String> = sequence.iter().map(|&e| format!("e{}", e + 1)).collect();
        println!("{}", labels.join(" "));
        return Ok(());
    }
    let (Some(config), Some(alpha)) = (&args.config, &args.alpha) else {
        bail!("schedule needs either --weights or both --config and --alpha");
    };
    let family = load_family(config)?;
    let alpha = load_alpha(&family, alpha)?;
    let word = scheduler::freq_sequence(&family, &alpha, args.depth);
    print_json(&word)
}

fn cmd_weave(args: WeaveArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let alpha = load_alpha(&family, &args.alpha)?;
    let jseq = parse_usize_list(&args.jseq)?;
    let depth = args.depth.unwrap_or(jseq.len());
    let word = scheduler::weave(&family, &jseq, &alpha, depth)?;
    print_json(&word)
}

/// Scales aligned to powers of the coarsest branch width: short ladders keep
/// the boxes well populated for the 2D statistic, the 1D fibre statistic can
/// afford finer ones.
fn default_scales(family: &GlsFamily, target: EstimateTarget) -> Vec<f64> {
    let coarsest = family
        .digits()
        .iter()
        .map(|&d| family.systems()[d.j].width(d.k))
        .fold(0.0f64, f64::max);
    let powers = match target {
        EstimateTarget::Level => 1..=3,
        EstimateTarget::Fibre => 2..=5,
    };
    powers.map(|k| coarsest.powi(k)).collect()
}

fn print_fit_csv(fit: &estimator::ScalingFit, label: &str) {
    println!("# {label}");
    println!("scale,statistic");
    for (scale, stat) in fit.scales.iter().zip(&fit.statistic) {
        println!("{scale},{stat}");
    }
    println!("slope,{}", fit.slope);
    println!("residual,{}", fit.residual);
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let alpha = load_alpha(&family, &args.alpha)?;
    let scales = match &args.scales {
        Some(text) => parse_f64_list(text)?,
        None => default_scales(&family, args.target),
    };

    match args.target {
        EstimateTarget::Level => {
            let cloud =
                estimator::sample_points(&family, &alpha, args.depth, args.samples, args.seed);
            if let Some(path) = &args.cloud_out {
                let file = fs::File::create(path)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                cloud.write_csv(std::io::BufWriter::new(file))?;
            }
            let grid = estimator::grid_entropy_dim(&cloud, &scales)?;
            let boxes = estimator::box_count_dim(&cloud, &scales)?;
            match args.format {
                Format::Json => print_json(&json!({
                    "target": "level",
                    "meta": cloud.meta,
                    "grid_entropy": grid,
                    "box_count": boxes,
                })),
                Format::Csv => {
                    print_fit_csv(&grid, "grid_entropy");
                    print_fit_csv(&boxes, "box_count");
                    Ok(())
                }
            }
        }
        EstimateTarget::Fibre => {
            if let Some(path) = &args.cloud_out {
                let (w, xs) = estimator::sample_fibre_points(
                    &family,
                    &alpha,
                    args.depth,
                    args.samples,
                    args.seed,
                )?;
                let mut out = std::io::BufWriter::new(
                    fs::File::create(path)
                        .with_context(|| format!("cannot write {}", path.display()))?,
                );
                writeln!(out, "w,x")?;
                for x in xs {
                    writeln!(out, "{w},{x}")?;
                }
            }
            let fit = estimator::estimate_dim_fibre(
                &family,
                &alpha,
                args.depth,
                args.samples,
                args.seed,
                &scales,
            )?;
            match args.format {
                Format::Json => print_json(&json!({
                    "target": "fibre",
                    "depth": args.depth,
                    "samples": args.samples,
                    "seed": args.seed,
                    "fit": fit,
                })),
                Format::Csv => {
                    print_fit_csv(&fit, "fibre_grid_entropy");
                    Ok(())
                }
            }
        }
    }
}

fn cmd_pressure(args: PressureArgs) -> Result<()> {
    let family = load_family(&args.config)?;
    let alpha = load_alpha(&family, &args.alpha)?;
    if args.inf {
        let value = dimension::inf_q_pressure(&family, &alpha, args.s)?;
        return print_json(&json!({ "s": args.s, "inf_pressure": value }));
    }
    let q = match &args.q {
        Some(text) => parse_f64_list(text)?,
        None => vec![0.0; family.digit_count()],
    };
    let value = dimension::pressure(&family, &alpha, args.s, &q)?;
    print_json(&json!({ "s": args.s, "pressure": value }))
}
