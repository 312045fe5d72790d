use serde::{Deserialize, Serialize};

use super::{mertens_value, pi_value, zhang_value, RaceError, RaceKind, RaceState};
use crate::primes::sieve_segment;

/// Constant the report asserts against.
pub const LIPSCHITZ_BOUND: f64 = 4.0;

/// A function that can list its values over `[lo, hi]` densely enough that
/// their extremes are its extremes on the interval. The first value is the
/// one at `lo`.
pub trait SampledFunction {
    fn values_on(&mut self, lo: f64, hi: f64) -> Result<Vec<f64>, RaceError>;
}

/// One of the race errors as a function of a real variable.
///
/// Between consecutive primes each error is smooth, so the extremes on an
/// interval are found among both one-sided values at every prime plus a
/// uniform grid. Calls with increasing `lo` reuse the running sums.
#[derive(Debug, Clone)]
pub struct RaceFunction {
    kind: RaceKind,
    state: RaceState,
    grid: usize,
}

impl RaceFunction {
    pub fn new(kind: RaceKind) -> Self {
        Self::with_grid(kind, 256)
    }

    pub fn with_grid(kind: RaceKind, grid: usize) -> Self {
        Self { kind, state: RaceState::new(), grid: grid.max(1) }
    }

    fn value(&self, x: f64, pi_x: u64) -> f64 {
        match self.kind {
            RaceKind::Pi => pi_value(x, pi_x).value,
            RaceKind::Mertens => mertens_value(x, self.state.mertens_log_sum().value()).value,
            RaceKind::Zhang => zhang_value(x, &self.state).value,
        }
    }
}

impl SampledFunction for RaceFunction {
    fn values_on(&mut self, lo: f64, hi: f64) -> Result<Vec<f64>, RaceError> {
        if !(lo >= 2.0) || !(hi >= lo) || !hi.is_finite() {
            return Err(RaceError::Domain { kind: self.kind, x: lo });
        }
        let start = lo.ceil() as u64;
        if start < self.state.x_reached() {
            self.state = RaceState::new();
        }
        self.state.advance_to(start)?;
        let primes = sieve_segment(start, hi.floor() as u64 + 1)?.into_primes();

        // π(lo) counts lo itself when it is a prime.
        let lo_is_prime = lo == start as f64 && primes.first() == Some(&start);
        let mut out = vec![self.value(lo, self.state.pi_count() + lo_is_prime as u64)];

        let step = (hi - lo) / self.grid as f64;
        let mut next_grid = 1usize;
        for &p in &primes {
            let pf = p as f64;
            while next_grid <= self.grid && lo + next_grid as f64 * step < pf {
                let z = lo + next_grid as f64 * step;
                out.push(self.value(z, self.state.pi_count()));
                next_grid += 1;
            }
            // left and right limits at p
            self.state.skip_to(p);
            out.push(self.value(pf, self.state.pi_count()));
            self.state.absorb(p);
            out.push(self.value(pf, self.state.pi_count()));
        }
        while next_grid <= self.grid {
            let z = (lo + next_grid as f64 * step).min(hi);
            out.push(self.value(z, self.state.pi_count()));
            next_grid += 1;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzReport {
    /// `(x, sup_{z∈[x, x+x^{1/3}]} |E(z) − E(x)| · x^{1/6} / log x)`.
    pub samples: Vec<(f64, f64)>,
    pub max_ratio: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Normalized oscillation of `f` over `[x, x + x^{1/3}]` at each sample.
pub fn lipschitz_check<F: SampledFunction>(f: &mut F, xs: &[f64]) -> Result<LipschitzReport, RaceError> {
    if xs.len() < 2 {
        return Err(RaceError::TooFewSamples { needed: 2, got: xs.len() });
    }
    let mut samples = Vec::with_capacity(xs.len());
    for &x in xs {
        let values = f.values_on(x, x + x.cbrt())?;
        let v0 = values[0];
        let sup = values.iter().map(|v| (v - v0).abs()).fold(0.0, f64::max);
        samples.push((x, sup * x.powf(1.0 / 6.0) / x.ln()));
    }
    let max_ratio = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    Ok(LipschitzReport {
        samples,
        max_ratio,
        bound: LIPSCHITZ_BOUND,
        passed: max_ratio <= LIPSCHITZ_BOUND,
    })
}
