//! Tables of ordinates `γ > 0` of nontrivial zeta zeros `1/2 + iγ`.
//!
//! Text format: one decimal ordinate per line, ascending; blank lines and
//! lines starting with `#` are ignored.

use std::f64::consts::{E, PI};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::CompensatedSum;

/// Ordinate of the first zero, used where a table is not needed to know
/// that no zero lies below some height.
pub const FIRST_ZERO: f64 = 14.134_725_141_734_695;

/// The first 100 ordinates, bundled for offline use.
pub const BUNDLED_100: &str = include_str!("../data/zeros100.txt");

#[derive(Debug, Error)]
pub enum ZeroError {
    #[error("line {line}: cannot parse {text:?} as an ordinate")]
    Parse { line: usize, text: String },
    #[error("line {line}: ordinate {value} is not above 14")]
    OutOfRange { line: usize, value: f64 },
    #[error("line {line}: ordinate {value} does not exceed the previous one, {previous}")]
    NotIncreasing { line: usize, previous: f64, value: f64 },
    #[error("zero count {count} below T = {t} is too far from the estimate {estimate:.3} (tolerance {tolerance:.3})")]
    CountMismatch { t: f64, count: usize, estimate: f64, tolerance: f64 },
    #[error("T = {t} exceeds the table height {height}")]
    AboveHeight { t: f64, height: f64 },
    #[error("a nonempty zero table is required")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Validated ascending ordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    digest: String,
}

impl ZeroTable {
    /// Parse the text format and validate ordering, range, and the
    /// Riemann–von Mangoldt count at every entry.
    pub fn parse(text: &str) -> Result<Self, ZeroError> {
        let mut gammas: Vec<f64> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let value: f64 = s
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| ZeroError::Parse { line, text: s.to_string() })?;
            if value <= 14.0 {
                return Err(ZeroError::OutOfRange { line, value });
            }
            if let Some(&previous) = gammas.last() {
                if value <= previous {
                    return Err(ZeroError::NotIncreasing { line, previous, value });
                }
            }
            gammas.push(value);
        }
        let digest = hex_digest(text.as_bytes());
        let table = Self { gammas, digest };
        table.validate_counts()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self, ZeroError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The bundled 100-zero table.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_100).expect("bundled table is valid")
    }

    /// Build from ordinates already in memory, with the same validation.
    pub fn from_gammas(gammas: Vec<f64>) -> Result<Self, ZeroError> {
        let mut bytes = Vec::with_capacity(gammas.len() * 8);
        for (i, &g) in gammas.iter().enumerate() {
            if !g.is_finite() {
                return Err(ZeroError::Parse { line: i + 1, text: g.to_string() });
            }
            if g <= 14.0 {
                return Err(ZeroError::OutOfRange { line: i + 1, value: g });
            }
            if i > 0 && g <= gammas[i - 1] {
                return Err(ZeroError::NotIncreasing { line: i + 1, previous: gammas[i - 1], value: g });
            }
            bytes.extend_from_slice(&g.to_le_bytes());
        }
        let table = Self { gammas, digest: hex_digest(&bytes) };
        table.validate_counts()?;
        Ok(table)
    }

    /// The first `n` zeros (all of them if `n` is larger). The digest is
    /// that of the source table; `len()` records how many were kept.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            gammas: self.gammas[..n.min(self.gammas.len())].to_vec(),
            digest: self.digest.clone(),
        }
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Largest ordinate, or 0 for an empty table.
    pub fn height(&self) -> f64 {
        self.gammas.last().copied().unwrap_or(0.0)
    }

    /// SHA-256 of the source, hex encoded.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Number of ordinates `≤ t`.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t)
    }

    /// Ordinates `≤ t`.
    pub fn up_to(&self, t: f64) -> &[f64] {
        &self.gammas[..self.count_up_to(t)]
    }

    fn validate_counts(&self) -> Result<(), ZeroError> {
        for (i, &g) in self.gammas.iter().enumerate() {
            // just below and at each ordinate, where N(T) jumps
            check_count(g, i + 1)?;
            check_count(g * (1.0 - 1e-12), i)?;
        }
        Ok(())
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Riemann–von Mangoldt main term `T/2π · log(T/2πe) + 7/8`.
pub fn rvm_estimate(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * E)).ln() + 7.0 / 8.0
}

/// Allowed deviation of the count from [`rvm_estimate`].
pub fn rvm_tolerance(t: f64) -> f64 {
    2.0 + 0.5 * t.max(1.0).ln()
}

fn check_count(t: f64, count: usize) -> Result<RvmReport, ZeroError> {
    let estimate = rvm_estimate(t);
    let tolerance = rvm_tolerance(t);
    if (count as f64 - estimate).abs() > tolerance {
        return Err(ZeroError::CountMismatch { t, count, estimate, tolerance });
    }
    Ok(RvmReport { t, count, estimate, tolerance })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RvmReport {
    pub t: f64,
    pub count: usize,
    pub estimate: f64,
    pub tolerance: f64,
}

/// Compare `#{γ ≤ t}` with the Riemann–von Mangoldt estimate.
pub fn rvm_count_check(table: &ZeroTable, t: f64) -> Result<RvmReport, ZeroError> {
    if t > table.height() && t >= FIRST_ZERO {
        return Err(ZeroError::AboveHeight { t, height: table.height() });
    }
    check_count(t, table.count_up_to(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroSums {
    /// `Σ 1/(1/4 + γ²)`.
    pub rho: f64,
    /// `Σ 1/γ²`.
    pub inverse_square: f64,
}

/// Reciprocal sums over the table, accumulated from the top down.
pub fn zero_sum_rho(table: &ZeroTable) -> Result<ZeroSums, ZeroError> {
    if table.is_empty() {
        return Err(ZeroError::Empty);
    }
    let mut rho = CompensatedSum::new();
    let mut inv = CompensatedSum::new();
    for &g in table.gammas().iter().rev() {
        rho.add(1.0 / (0.25 + g * g));
        inv.add(1.0 / (g * g));
    }
    Ok(ZeroSums { rho: rho.value(), inverse_square: inv.value() })
}
