//! Truncated explicit formulas over a zero table.
//!
//! Under RH, with `1/2 + iγ` running over the zeros with `γ > 0`,
//!
//! * `E_Z(x) = E_M(x) ≈ 1 − 2 Re Σ_{γ≤T} x^{iγ}/(−1/2 + iγ)`
//! * `E_π(x) ≈ −1 − 2 Re Σ_{γ≤T} x^{iγ}/(1/2 + iγ)`
//!
//! with error `O(1/log x + (√x/T) log²(xT))`. The implied constant is not
//! known, so [`ENVELOPE_CONSTANT`] turns the shape into a diagnostic band.
//!
//! A height `T` selects every zero with `γ ≤ T`; passing `T = γ_n` uses
//! exactly the first `n` zeros.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{neg_log_derivative, AnalysisError, CompensatedSum, DoubleDouble, LOG_DERIVATIVE_AT_ZERO};
use crate::races::{scan, KindSet, RaceError, RaceState, ScanConfig};
use crate::zeros::{ZeroTable, FIRST_ZERO};

/// Multiplier on the big-O shapes used as error envelopes.
pub const ENVELOPE_CONSTANT: f64 = 10.0;

/// Smallest `x` and `T` for which the truncated formulas are stated.
pub const MIN_ARGUMENT: f64 = 5.0;

#[derive(Debug, Error)]
pub enum ExplicitError {
    #[error("x = {x} and T = {t} must both be at least 5")]
    Range { x: f64, t: f64 },
    #[error("T = {t} exceeds the zero table height {height}")]
    AboveHeight { t: f64, height: f64 },
    #[error("x = {0} is a prime power; the formula holds only between them")]
    PrimePower(f64),
    #[error("x must exceed 1, got {0}")]
    XTooSmall(f64),
    #[error("alpha = {0} is not supported (use 0 or a value above 1)")]
    UnsupportedAlpha(f64),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Race(#[from] RaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedFormulaResult {
    pub x: f64,
    pub t: f64,
    pub value: f64,
    pub error_envelope: f64,
    pub zero_count_used: usize,
}

/// Zeros with `γ ≤ t`. No table is needed below the first zero.
fn zeros_below(table: &ZeroTable, t: f64) -> Result<&[f64], ExplicitError> {
    if t < FIRST_ZERO {
        return Ok(&[]);
    }
    if t > table.height() {
        return Err(ExplicitError::AboveHeight { t, height: table.height() });
    }
    Ok(table.up_to(t))
}

/// `(cos, sin)` of `γ log x`, reduced modulo 2π in double-double so the
/// phase stays accurate for large `γ log x`.
fn phase(gamma: f64, log_x: f64) -> (f64, f64) {
    let theta = DoubleDouble::from_prod(gamma, log_x).reduce_two_pi().to_f64();
    let (s, c) = theta.sin_cos();
    (c, s)
}

/// `2 Re Σ x^{iγ}/(c + iγ)` over the given zeros, smallest terms first.
fn oscillating_sum(gammas: &[f64], x: f64, c: f64) -> f64 {
    let lx = x.ln();
    let mut sum = CompensatedSum::new();
    for &g in gammas.iter().rev() {
        let (cos, sin) = phase(g, lx);
        sum.add(2.0 * (c * cos + g * sin) / (c * c + g * g));
    }
    sum.value()
}

fn corollary_envelope(x: f64, t: f64) -> f64 {
    let l = (x * t).ln();
    ENVELOPE_CONSTANT * (1.0 / x.ln() + x.sqrt() / t * l * l)
}

fn truncated(x: f64, t: f64, table: &ZeroTable, mean: f64, c: f64) -> Result<TruncatedFormulaResult, ExplicitError> {
    if !(x >= MIN_ARGUMENT && t >= MIN_ARGUMENT) || !x.is_finite() {
        return Err(ExplicitError::Range { x, t });
    }
    let gammas = zeros_below(table, t)?;
    Ok(TruncatedFormulaResult {
        x,
        t,
        value: mean - oscillating_sum(gammas, x, c),
        error_envelope: corollary_envelope(x, t),
        zero_count_used: gammas.len(),
    })
}

/// `1 − 2 Re Σ_{γ≤T} x^{iγ}/(−1/2 + iγ)`.
pub fn e_z_truncated(x: f64, t: f64, table: &ZeroTable) -> Result<TruncatedFormulaResult, ExplicitError> {
    truncated(x, t, table, 1.0, -0.5)
}

/// Same formula as [`e_z_truncated`]: the two races share their explicit
/// formula.
pub fn e_m_truncated(x: f64, t: f64, table: &ZeroTable) -> Result<TruncatedFormulaResult, ExplicitError> {
    e_z_truncated(x, t, table)
}

/// `−1 − 2 Re Σ_{γ≤T} x^{iγ}/(1/2 + iγ)`, with an envelope of the same shape
/// as the Zhang formula's.
pub fn e_pi_truncated(x: f64, t: f64, table: &ZeroTable) -> Result<TruncatedFormulaResult, ExplicitError> {
    truncated(x, t, table, -1.0, 0.5)
}

/// True when `n ≥ 2` is `p^k` for a prime `p` and `k ≥ 1`.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    let factor = loop {
        if p * p > n {
            break n;
        }
        if n.is_multiple_of(p) {
            break p;
        }
        p += if p == 2 { 1 } else { 2 };
    };
    let mut m = n;
    while m.is_multiple_of(factor) {
        m /= factor;
    }
    m == 1
}

/// Truncated right-hand side of
///
/// `Σ_{n≤x} Λ(n)/n^α = x^{1−α}/(1−α) − ζ'/ζ(α) − Σ_ρ x^{ρ−α}/(ρ−α) + Σ_{m≥1} x^{−2m−α}/(2m+α)`
///
/// for `x` not a prime power, with the nontrivial zeros taken in conjugate
/// pairs up to height `T` and the trivial-zero series summed to convergence.
/// Supported exponents are `α = 0` (where `ζ'/ζ(0) = log 2π`) and `α > 1`.
///
/// The envelope is the Perron truncation shape
/// `κ (x^{1−α}/T)(log²(xT) + 4^α) + κ x^{−α} log x`.
pub fn lambda_alpha_partial(x: f64, alpha: f64, t: f64, table: &ZeroTable) -> Result<TruncatedFormulaResult, ExplicitError> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(ExplicitError::XTooSmall(x));
    }
    if !(t >= MIN_ARGUMENT) {
        return Err(ExplicitError::Range { x, t });
    }
    if x.fract() == 0.0 && x < 2f64.powi(53) && is_prime_power(x as u64) {
        return Err(ExplicitError::PrimePower(x));
    }
    let log_derivative = if alpha == 0.0 {
        LOG_DERIVATIVE_AT_ZERO
    } else if alpha > 1.0 && alpha.is_finite() {
        -neg_log_derivative(alpha)?
    } else {
        return Err(ExplicitError::UnsupportedAlpha(alpha));
    };
    let gammas = zeros_below(table, t)?;
    let c = 0.5 - alpha;
    let zeros = x.powf(c) * oscillating_sum(gammas, x, c);

    let mut trivial = CompensatedSum::new();
    let inv_x2 = x.powi(-2);
    let mut power = x.powf(-alpha);
    for m in 1..1_000_000u32 {
        power *= inv_x2;
        let term = power / (2.0 * m as f64 + alpha);
        trivial.add(term);
        if term < 1e-18 * trivial.value().abs() {
            break;
        }
    }

    let value = x.powf(1.0 - alpha) / (1.0 - alpha) - log_derivative - zeros + trivial.value();
    let l = (x * t).ln();
    let envelope = ENVELOPE_CONSTANT
        * (x.powf(1.0 - alpha) / t * (l * l + 4f64.powf(alpha)) + x.powf(-alpha) * x.ln());
    Ok(TruncatedFormulaResult {
        x,
        t,
        value,
        error_envelope: envelope,
        zero_count_used: gammas.len(),
    })
}

/// `sup (log x)|E_M(x) − E_Z(x)|` over one decade of primes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecadeRow {
    pub lo: f64,
    pub hi: f64,
    pub samples: u64,
    pub sup: f64,
    pub sup_at: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricDifferenceReport {
    pub pilot: (f64, f64),
    pub pilot_sup: f64,
    /// Three times the pilot supremum.
    pub calibrated_bound: f64,
    pub range: (f64, f64),
    pub sup: f64,
    pub decades: Vec<DecadeRow>,
    pub passed: bool,
}

/// Streaming accumulator for [`SymmetricDifferenceReport`].
#[derive(Debug, Clone)]
pub struct SymmetricDifference {
    pilot: (f64, f64),
    range: (f64, f64),
    pilot_sup: f64,
    decades: Vec<DecadeRow>,
}

impl SymmetricDifference {
    pub fn new(pilot: (f64, f64), range: (f64, f64)) -> Self {
        let mut decades = Vec::new();
        let mut lo = range.0;
        while lo < range.1 {
            let hi = (10f64.powf(lo.log10().floor() + 1.0)).min(range.1);
            let hi = if hi <= lo { range.1 } else { hi };
            decades.push(DecadeRow { lo, hi, samples: 0, sup: 0.0, sup_at: 0.0 });
            lo = hi;
        }
        Self { pilot, range, pilot_sup: 0.0, decades }
    }

    pub fn observe(&mut self, x: f64, e_m: f64, e_z: f64) {
        let r = x.ln() * (e_m - e_z).abs();
        if x >= self.pilot.0 && x <= self.pilot.1 {
            self.pilot_sup = self.pilot_sup.max(r);
        }
        if x >= self.range.0 && x <= self.range.1 {
            // the right end of the range belongs to the last decade
            let last = self.decades.len() - 1;
            let i = self.decades.iter().position(|d| x < d.hi).unwrap_or(last);
            let row = &mut self.decades[i];
            row.samples += 1;
            if r > row.sup {
                row.sup = r;
                row.sup_at = x;
            }
        }
    }

    pub fn finish(self) -> SymmetricDifferenceReport {
        let sup = self.decades.iter().map(|d| d.sup).fold(0.0, f64::max);
        let calibrated_bound = 3.0 * self.pilot_sup;
        SymmetricDifferenceReport {
            pilot: self.pilot,
            pilot_sup: self.pilot_sup,
            calibrated_bound,
            range: self.range,
            sup,
            decades: self.decades,
            passed: sup <= calibrated_bound,
        }
    }
}

/// Scan both races at every prime up to `range.1` and compare the
/// supremum of `(log x)|E_M − E_Z|` over `range` with three times its
/// supremum over `pilot`.
pub fn symmetric_difference_bound(pilot: (f64, f64), range: (f64, f64)) -> Result<SymmetricDifferenceReport, ExplicitError> {
    let limit = pilot.1.max(range.1).floor() as u64;
    let mut acc = SymmetricDifference::new(pilot, range);
    let config = ScanConfig {
        kinds: KindSet { pi: false, mertens: true, zhang: true },
        emit_every: 1,
        emit_exceptional: false,
        ..ScanConfig::default()
    };
    scan(&mut RaceState::new(), limit, &config, |p| {
        let m = p.mertens.expect("mertens requested").value;
        let z = p.zhang.expect("zhang requested").value;
        acc.observe(p.x, m, z);
    })?;
    Ok(acc.finish())
}
