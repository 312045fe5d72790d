//! Normalized race errors and their streaming evaluation over the primes.
//!
//! * `E_π(x) = (log x / √x)(π(x) − li(x))`
//! * `E_M(x) = (Σ_{p<x} −log(1 − 1/p) − log log x − γ) √x log x`
//! * `E_Z(x) = (1/log x − Σ_{p≥x} 1/(p log p)) √x log² x`
//!
//! At a prime `p` the sums follow the written ranges: `p` is excluded from the
//! Mertens product (`p < x`) and belongs to the Zhang tail (`p ≥ x`), while
//! `π(p)` counts `p`. A prime is *Mertens* when `E_M(p) > 0` and *Zhang* when
//! `E_Z(p) ≥ 0`. Every value carries an absolute rounding budget. A value
//! whose magnitude does not exceed its budget is reported as indeterminate
//! and not classified either way.

mod intervals;
mod lipschitz;
mod scan;
mod state;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{li, AnalysisError, Constants};
use crate::primes::PrimeError;

pub use intervals::positive_intervals;
pub use lipschitz::{lipschitz_check, LipschitzReport, RaceFunction, SampledFunction, LIPSCHITZ_BOUND};
pub use scan::{scan, KindSet, KindTally, ScanConfig, ScanSummary};
pub use state::{RaceState, SCHEMA_VERSION};

/// Relative accuracy assumed for `li`.
pub const LI_RELATIVE_ERROR: f64 = 1e-13;

/// Absolute accuracy assumed for `C_Z = Σ_p 1/(p log p)`.
pub const ZHANG_CONSTANT_ERROR: f64 = 1e-13;

const ROUNDING: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Error)]
pub enum RaceError {
    #[error("{kind} is evaluated for x >= 2, got {x}")]
    Domain { kind: RaceKind, x: f64 },
    #[error("state covers primes below {reached}, but evaluation at {x} needs primes below {needed}")]
    StateMismatch { x: f64, reached: u64, needed: u64 },
    #[error("cannot move state back from {at} to {requested}")]
    Backwards { at: u64, requested: u64 },
    #[error("scan limit must be at least 3, got {0}")]
    LimitTooSmall(u64),
    #[error("at least {needed} samples required, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RaceError {
    fn corrupt(msg: impl Into<String>) -> Self {
        Self::CorruptCheckpoint(msg.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RaceKind {
    /// `π(x)` against `li(x)`.
    Pi,
    /// Mertens' product against `e^γ log x`.
    Mertens,
    /// `Σ_{p≥x} 1/(p log p)` against `1/log x`.
    Zhang,
}

impl RaceKind {
    pub const ALL: [RaceKind; 3] = [RaceKind::Pi, RaceKind::Mertens, RaceKind::Zhang];

    pub fn name(self) -> &'static str {
        match self {
            RaceKind::Pi => "pi",
            RaceKind::Mertens => "mertens",
            RaceKind::Zhang => "zhang",
        }
    }

    /// Which sign counts as membership: `x ∈ Π` is the rare event for the
    /// π race, while Mertens and Zhang primes are the common case.
    fn member_is_rare(self) -> bool {
        matches!(self, RaceKind::Pi)
    }
}

impl fmt::Display for RaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RaceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pi" | "li" => Ok(RaceKind::Pi),
            "mertens" | "m" => Ok(RaceKind::Mertens),
            "zhang" | "z" => Ok(RaceKind::Zhang),
            other => Err(format!("unknown race {other:?} (expected pi, mertens or zhang)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Indeterminate,
}

/// A normalized error together with its absolute rounding budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaceValue {
    pub value: f64,
    pub budget: f64,
}

impl RaceValue {
    pub fn sign(&self) -> Sign {
        if self.value > self.budget {
            Sign::Positive
        } else if self.value < -self.budget {
            Sign::Negative
        } else {
            Sign::Indeterminate
        }
    }

    /// Membership in the race's set (`Π`, Mertens, Zhang), or `None` when
    /// the value is within its budget of zero.
    pub fn member(&self) -> Option<bool> {
        match self.sign() {
            Sign::Positive => Some(true),
            Sign::Negative => Some(false),
            Sign::Indeterminate => None,
        }
    }
}

/// Evaluated errors at one point. Races not requested are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RacePoint {
    pub x: f64,
    pub pi: Option<RaceValue>,
    pub mertens: Option<RaceValue>,
    pub zhang: Option<RaceValue>,
}

impl RacePoint {
    pub fn get(&self, kind: RaceKind) -> Option<RaceValue> {
        match kind {
            RaceKind::Pi => self.pi,
            RaceKind::Mertens => self.mertens,
            RaceKind::Zhang => self.zhang,
        }
    }

    /// True if any evaluated race sits on its unusual side or is indeterminate.
    pub fn is_exceptional(&self) -> bool {
        RaceKind::ALL.iter().any(|&k| {
            self.get(k).is_some_and(|v| match v.member() {
                None => true,
                Some(m) => m == k.member_is_rare(),
            })
        })
    }
}

fn check_domain(kind: RaceKind, x: f64) -> Result<(), RaceError> {
    if x >= 2.0 && x.is_finite() {
        Ok(())
    } else {
        Err(RaceError::Domain { kind, x })
    }
}

fn check_state(x: f64, state: &RaceState) -> Result<(), RaceError> {
    let needed = x.ceil() as u64;
    if state.x_reached() != needed {
        return Err(RaceError::StateMismatch { x, reached: state.x_reached(), needed });
    }
    Ok(())
}

/// `E_π(x)` given `π(x)`.
pub fn e_pi(x: f64, pi_x: u64) -> Result<RaceValue, RaceError> {
    check_domain(RaceKind::Pi, x)?;
    Ok(pi_value(x, pi_x))
}

/// `E_M(x)` from a state holding exactly the primes below `x`.
pub fn e_m(x: f64, state: &RaceState) -> Result<RaceValue, RaceError> {
    check_domain(RaceKind::Mertens, x)?;
    check_state(x, state)?;
    Ok(mertens_value(x, state.mertens_log_sum().value()))
}

/// `E_Z(x)` from a state holding exactly the primes below `x`.
pub fn e_z(x: f64, state: &RaceState) -> Result<RaceValue, RaceError> {
    check_domain(RaceKind::Zhang, x)?;
    check_state(x, state)?;
    Ok(zhang_value(x, state))
}

pub(crate) fn pi_value(x: f64, pi_x: u64) -> RaceValue {
    let l = li(x).expect("x >= 2");
    let count = pi_x as f64;
    let scale = x.ln() / x.sqrt();
    let value = (count - l) * scale;
    let budget = (LI_RELATIVE_ERROR * l + ROUNDING * (l + count)) * scale + ROUNDING * value.abs();
    RaceValue { value, budget }
}

pub(crate) fn mertens_value(x: f64, log_sum: f64) -> RaceValue {
    let gamma = Constants::get().euler_gamma;
    let lx = x.ln();
    let llx = lx.ln();
    let scale = x.sqrt() * lx;
    let value = (log_sum - llx - gamma) * scale;
    let budget = ROUNDING * (log_sum + llx.abs() + gamma) * scale + ROUNDING * value.abs();
    RaceValue { value, budget }
}

pub(crate) fn zhang_value(x: f64, state: &RaceState) -> RaceValue {
    let cz = Constants::get().zhang_constant;
    let tail = state.zhang_partial().subtract_from(cz);
    let lx = x.ln();
    let scale = x.sqrt() * lx * lx;
    let value = (1.0 / lx - tail) * scale;
    let budget = (ZHANG_CONSTANT_ERROR + ROUNDING * (cz + 1.0 / lx)) * scale + ROUNDING * value.abs();
    RaceValue { value, budget }
}
