//! File formats. JSON results sit in an [`Envelope`] that echoes the run
//! configuration; CSV files start with `#` metadata lines carrying the
//! same information.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use prl_core::density::{BadIntervalReport, DensityEstimate, TitchmarshReport};
use prl_core::dist::DistributionResult;
use prl_core::explicit::{SymmetricDifferenceReport, TruncatedFormulaResult};
use prl_core::format::sci17;
use prl_core::races::{RacePoint, RaceValue, ScanSummary};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL: &str = "prl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const SCAN_HEADER: &str = "x,e_pi,e_m,e_z,in_pi,mertens,zhang";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope<T> {
    pub format_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub result: T,
}

impl<T> Envelope<T> {
    pub fn new<C: Serialize>(command: &str, config: &C, result: T) -> Result<Self> {
        Ok(Self {
            format_version: FORMAT_VERSION,
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            config: serde_json::to_value(config)?,
            result,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanOutput {
    pub summary: ScanSummary,
    /// `x_reached` of the state the run started from.
    pub resumed_from: u64,
    pub rows_written: u64,
    /// True when the state was already past the limit.
    pub no_op: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityOutput {
    pub estimate: DensityEstimate,
    /// Primes whose sign could not be decided; counted as non-members.
    pub indeterminate: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalsOutput {
    pub intervals: u64,
    pub bad_intervals: Vec<BadIntervalReport>,
    pub titchmarsh: TitchmarshReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitOutput {
    pub formula: TruncatedFormulaResult,
    pub zero_digest: String,
    pub direct: Option<f64>,
    pub residual: Option<f64>,
    pub within_envelope: Option<bool>,
}

/// Every JSON document the tool writes, by command.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Scan(Envelope<ScanOutput>),
    Delta(Envelope<DistributionResult>),
    Density(Envelope<DensityOutput>),
    Intervals(Envelope<IntervalsOutput>),
    Explicit(Envelope<ExplicitOutput>),
    Symdiff(Envelope<SymmetricDifferenceReport>),
}

/// Write pretty JSON to `path`, or standard output.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Metadata lines for the top of a CSV file.
pub fn csv_preamble<C: Serialize>(command: &str, config: &C) -> Result<String> {
    Ok(format!(
        "# {TOOL} {VERSION} format {FORMAT_VERSION} {command}\n# config {}\n",
        serde_json::to_string(config)?
    ))
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn flag(v: Option<RaceValue>) -> &'static str {
    match v.map(|v| v.member()) {
        None => "",
        Some(Some(true)) => "1",
        Some(Some(false)) => "0",
        Some(None) => "?",
    }
}

pub fn write_scan_row<W: Write>(w: &mut W, p: &RacePoint) -> std::io::Result<()> {
    let value = |v: Option<RaceValue>| v.map(|v| sci17(v.value)).unwrap_or_default();
    let x = if p.x.fract() == 0.0 { format!("{}", p.x as u64) } else { sci17(p.x) };
    writeln!(
        w,
        "{x},{},{},{},{},{},{}",
        value(p.pi),
        value(p.mertens),
        value(p.zhang),
        flag(p.pi),
        flag(p.mertens),
        flag(p.zhang)
    )
}
