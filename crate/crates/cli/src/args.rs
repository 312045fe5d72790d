//! Command-line surface. Every option can also come from a `PRL_*`
//! environment variable or a key=value config file (see [`crate::config`]).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prl_core::density::Exponent;
use prl_core::races::RaceKind;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "prl", version, about = "Prime number races: scans, explicit formulas, bias distribution, densities")]
pub struct Cli {
    /// File of key=value defaults; flags and PRL_* variables take precedence.
    #[arg(long, global = true, env = "PRL_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the race errors at every prime up to a limit.
    Scan(ScanArgs),
    /// Bias probability Δ of the limiting distribution.
    Delta(DeltaArgs),
    /// Logarithmic density estimate of a race set.
    Density(DensityArgs),
    /// The y_k partition with prime counts and ε-classification.
    Intervals(IntervalsArgs),
    /// Truncated explicit formula at one point, with the residual against direct computation.
    Explicit(ExplicitArgs),
    /// Self-calibrated check of (log x)|E_M − E_Z|.
    Symdiff(SymdiffArgs),
    /// Check output files against their schemas.
    Validate(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Scan(_) => "scan",
            Command::Delta(_) => "delta",
            Command::Density(_) => "density",
            Command::Intervals(_) => "intervals",
            Command::Explicit(_) => "explicit",
            Command::Symdiff(_) => "symdiff",
            Command::Validate(_) => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Race {
    Pi,
    Mertens,
    Zhang,
}

impl From<Race> for RaceKind {
    fn from(r: Race) -> Self {
        match r {
            Race::Pi => RaceKind::Pi,
            Race::Mertens => RaceKind::Mertens,
            Race::Zhang => RaceKind::Zhang,
        }
    }
}

/// Accepts plain integers and integral floats such as `1e6`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63) {
        Ok(x as u64)
    } else {
        Err(format!("not a nonnegative integer: {s:?}"))
    }
}

/// `num/den`, or a bare integer.
pub fn parse_exponent(s: &str) -> Result<Exponent, String> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let den = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    Exponent::new(num, den).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    /// Races to evaluate.
    #[arg(long, env = "PRL_RACE", value_delimiter = ',', default_value = "pi,mertens,zhang")]
    pub race: Vec<Race>,
    #[arg(long, env = "PRL_LIMIT", value_parser = parse_count)]
    pub limit: u64,
    /// CSV of exceptional points (and every n-th prime with --emit-every).
    #[arg(long, env = "PRL_OUT")]
    pub out: Option<PathBuf>,
    /// Resume from and save to this state file.
    #[arg(long, env = "PRL_CHECKPOINT")]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, env = "PRL_EMIT_EVERY", value_parser = parse_count, default_value = "0")]
    pub emit_every: u64,
    #[arg(long, env = "PRL_CHECKPOINT_EVERY", value_parser = parse_count, default_value = "4194304")]
    pub checkpoint_every: u64,
    /// JSON summary; standard output if absent.
    #[arg(long, env = "PRL_SUMMARY")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistRace {
    /// Mean +1: the Mertens and Zhang variable.
    Zhang,
    /// Mean −1: the π versus li variable.
    Pi,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DeltaArgs {
    #[arg(long, env = "PRL_DIST_RACE", value_enum, default_value = "zhang")]
    pub race: DistRace,
    /// Zero table; the bundled 100 zeros if absent.
    #[arg(long, env = "PRL_ZEROS")]
    pub zeros: Option<PathBuf>,
    /// Use only the first n zeros of the table.
    #[arg(long, env = "PRL_ZEROS_COUNT", value_parser = parse_count)]
    pub zeros_count: Option<u64>,
    #[arg(long, env = "PRL_T_MAX", default_value_t = prl_core::dist::DEFAULT_T_MAX)]
    pub t_max: f64,
    #[arg(long, env = "PRL_GRID_STEP", default_value_t = prl_core::dist::DEFAULT_GRID_STEP)]
    pub grid_step: f64,
    /// Add Monte Carlo statistics from this many draws.
    #[arg(long, env = "PRL_MONTE_CARLO", value_parser = parse_count)]
    pub monte_carlo: Option<u64>,
    #[arg(long, env = "PRL_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "PRL_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetArg {
    All,
    None,
    Pi,
    Mertens,
    Zhang,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorArg {
    Star,
    Prime,
    Log,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long, env = "PRL_SET", value_enum)]
    pub set: SetArg,
    #[arg(long, env = "PRL_LIMIT", value_parser = parse_count)]
    pub limit: u64,
    #[arg(long, env = "PRL_ESTIMATOR", value_enum, default_value = "star")]
    pub estimator: EstimatorArg,
    #[arg(long, env = "PRL_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntervalsArgs {
    #[arg(long, env = "PRL_LIMIT", value_parser = parse_count)]
    pub limit: u64,
    /// Goodness tolerances, one CSV column each.
    #[arg(long, env = "PRL_EPS", value_delimiter = ',', default_value = "0.5")]
    pub eps: Vec<f64>,
    /// Interval length exponent θ in (1/6, 1].
    #[arg(long, env = "PRL_EXPONENT", value_parser = parse_exponent, default_value = "1/3")]
    pub exponent: Exponent,
    /// CSV, one row per interval.
    #[arg(long, env = "PRL_OUT")]
    pub out: Option<PathBuf>,
    /// JSON with per-decade bad-interval coverage and the Titchmarsh check;
    /// standard output if absent.
    #[arg(long, env = "PRL_SUMMARY")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Zhang,
    Mertens,
    Pi,
    /// Σ Λ(n)/n^α, with --alpha.
    Lambda,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExplicitArgs {
    #[arg(long, env = "PRL_FORMULA", value_enum)]
    pub race: Formula,
    #[arg(long, env = "PRL_X")]
    pub x: f64,
    /// Truncation height.
    #[arg(long = "T", env = "PRL_T", conflicts_with = "t_index")]
    pub t: Option<f64>,
    /// Truncate at the n-th zero, T = γ_n.
    #[arg(long = "T-index", env = "PRL_T_INDEX", value_parser = parse_count)]
    pub t_index: Option<u64>,
    #[arg(long, env = "PRL_ZEROS")]
    pub zeros: Option<PathBuf>,
    #[arg(long, env = "PRL_ALPHA", default_value_t = 0.0)]
    pub alpha: f64,
    /// Skip the direct computation (which sieves up to x).
    #[arg(long)]
    pub no_direct: bool,
    #[arg(long, env = "PRL_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SymdiffArgs {
    #[arg(long, env = "PRL_PILOT_LO", default_value_t = 1e3)]
    pub pilot_lo: f64,
    #[arg(long, env = "PRL_PILOT_HI", default_value_t = 1e4)]
    pub pilot_hi: f64,
    #[arg(long, env = "PRL_RANGE_LO", default_value_t = 1e6)]
    pub range_lo: f64,
    #[arg(long, env = "PRL_RANGE_HI", default_value_t = 1e8)]
    pub range_hi: f64,
    #[arg(long, env = "PRL_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}
