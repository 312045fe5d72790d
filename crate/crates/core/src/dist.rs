//! Limiting distribution of the race variable
//!
//! `Y = mean_offset − Σ_γ w_γ cos θ_γ`, with `w_γ = 2/√(1/4 + γ²)` and
//! independent uniform phases `θ_γ`, one per zero. The Zhang and Mertens
//! races have `mean_offset = +1`, the π race has `−1`.
//!
//! Zeros above the table height are modelled by a centred Gaussian with the
//! exact missing variance `2 Σ_{γ > height} 1/(1/4 + γ²)`. The variance is
//! right but the shape is only an approximation.
//!
//! The characteristic function is
//! `Φ(t) = e^{it·mean} Π J₀(t w_γ) · e^{−t² σ²_tail / 2}`. The bias
//! `Δ = P(Y ≤ 0)` comes from the Gil-Pelaez inversion
//! `F(y) = 1/2 − (1/π) ∫_0^∞ Im(e^{−ity} Φ(t)) / t dt`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{bessel_j0, quad, zero_reciprocal_total, CompensatedSum};
use crate::zeros::{zero_sum_rho, ZeroError, ZeroTable};

/// Absolute tolerance on the inversion integral.
pub const DELTA_TOLERANCE: f64 = 1e-9;
/// `|Φ(t_max)|` must fall below this.
pub const DECAY_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_T_MAX: f64 = 50.0;
pub const DEFAULT_GRID_STEP: f64 = 0.05;

/// Draws per independently seeded Monte Carlo batch.
const BATCH: usize = 1 << 16;
/// Density grid points and half-width in standard deviations.
const DENSITY_POINTS: usize = 801;
const DENSITY_SPAN: f64 = 7.0;

#[derive(Debug, Error)]
pub enum DistError {
    #[error("|Φ(t_max)| = {magnitude:e} at t_max = {t_max}; need below {DECAY_TOLERANCE:e}")]
    InsufficientDecay { t_max: f64, magnitude: f64 },
    #[error("grid step {0} must be positive and below t_max")]
    BadGrid(f64),
    #[error(transparent)]
    Zero(#[from] ZeroError),
}

/// How zeros above the table are represented.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TailModel {
    None,
    Gaussian { variance: f64 },
}

impl TailModel {
    pub fn variance(&self) -> f64 {
        match *self {
            TailModel::None => 0.0,
            TailModel::Gaussian { variance } => variance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomRaceVariable {
    pub mean_offset: f64,
    /// `2/√(1/4 + γ²)`, decreasing.
    pub weights: Vec<f64>,
    pub tail: TailModel,
    /// Digest of the zero table the weights came from, if any.
    pub zero_digest: Option<String>,
}

impl RandomRaceVariable {
    /// Weights from `table`, with the Gaussian tail for higher zeros.
    pub fn from_table(mean_offset: f64, table: &ZeroTable) -> Result<Self, DistError> {
        Ok(Self {
            mean_offset,
            weights: weights(table),
            tail: TailModel::Gaussian { variance: tail_variance(table)? },
            zero_digest: Some(table.digest().to_string()),
        })
    }

    /// The variable for the Mertens and Zhang races.
    pub fn zhang(table: &ZeroTable) -> Result<Self, DistError> {
        Self::from_table(1.0, table)
    }

    /// The variable for the π race.
    pub fn pi(table: &ZeroTable) -> Result<Self, DistError> {
        Self::from_table(-1.0, table)
    }

    /// A point mass at `mean_offset`.
    pub fn constant(mean_offset: f64) -> Self {
        Self { mean_offset, weights: Vec::new(), tail: TailModel::None, zero_digest: None }
    }

    pub fn variance(&self) -> f64 {
        let w2: f64 = self.weights.iter().rev().map(|w| w * w).sum();
        0.5 * w2 + self.tail.variance()
    }

    fn is_degenerate(&self) -> bool {
        self.weights.is_empty() && self.tail.variance() == 0.0
    }
}

pub fn weights(table: &ZeroTable) -> Vec<f64> {
    table.gammas().iter().map(|g| 2.0 / (0.25 + g * g).sqrt()).collect()
}

/// `2 (S_total − S_table)`: the variance contributed by zeros above the
/// table, where `S = Σ 1/(1/4 + γ²)` and `S_total = (2 + γ − log 4π)/2`.
pub fn tail_variance(table: &ZeroTable) -> Result<f64, DistError> {
    let s = zero_sum_rho(table)?;
    Ok((2.0 * (zero_reciprocal_total() - s.rho)).max(0.0))
}

pub fn characteristic_function(t: f64, var: &RandomRaceVariable) -> Complex64 {
    let mut product = 1.0;
    for &w in &var.weights {
        product *= bessel_j0(t * w);
        if product == 0.0 {
            break;
        }
    }
    let gauss = (-0.5 * t * t * var.tail.variance()).exp();
    Complex64::from_polar(product * gauss, t * var.mean_offset)
}

/// `P(Y ≤ y)` by Gil-Pelaez inversion over `[0, t_max]`, with the
/// quadrature error estimate.
pub fn cdf_at(var: &RandomRaceVariable, y: f64, t_max: f64) -> (f64, f64) {
    if var.is_degenerate() {
        return (if var.mean_offset <= y { 1.0 } else { 0.0 }, 0.0);
    }
    let r = quad::integrate(
        |t| {
            if t == 0.0 {
                return var.mean_offset - y;
            }
            let phi = characteristic_function(t, var) * Complex64::from_polar(1.0, -t * y);
            phi.im / t
        },
        0.0,
        t_max,
        DELTA_TOLERANCE * std::f64::consts::PI * 0.1,
        0.0,
    );
    (0.5 - r.value / std::f64::consts::PI, r.error / std::f64::consts::PI)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub n: usize,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    /// `√(variance/n)`.
    pub standard_error: f64,
    /// Empirical `P(Y ≤ 0)`.
    pub p_nonpositive: f64,
    /// `(q, value)` for q in 0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999.
    pub quantiles: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionResult {
    pub mean_offset: f64,
    pub t_max: f64,
    pub t_grid: Vec<f64>,
    pub cf_values: Vec<Complex64>,
    /// `(y, density)` pairs.
    pub density_grid: Vec<(f64, f64)>,
    /// `P(Y ≤ 0)`.
    pub delta: f64,
    pub delta_error_estimate: f64,
    pub zeros_used: usize,
    pub zero_digest: Option<String>,
    pub tail_model: TailModel,
    pub monte_carlo: Option<SampleStats>,
}

impl DistributionResult {
    /// Cumulative trapezoid of the density grid.
    pub fn cdf_grid(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.density_grid.len());
        let mut acc = CompensatedSum::new();
        let mut prev: Option<(f64, f64)> = None;
        for &(y, f) in &self.density_grid {
            if let Some((y0, f0)) = prev {
                acc.add(0.5 * (f + f0) * (y - y0));
            }
            out.push((y, acc.value()));
            prev = Some((y, f));
        }
        out
    }

    /// Trapezoid integral of the density over the grid.
    pub fn density_mass(&self) -> f64 {
        self.cdf_grid().last().map_or(0.0, |c| c.1)
    }
}

/// Characteristic function on a grid, the inverted density, and
/// `Δ = P(Y ≤ 0)`.
pub fn delta_bias(var: &RandomRaceVariable, t_max: f64, grid_step: f64) -> Result<DistributionResult, DistError> {
    let zeros_used = var.weights.len();
    if var.is_degenerate() {
        let delta = if var.mean_offset <= 0.0 { 1.0 } else { 0.0 };
        return Ok(DistributionResult {
            mean_offset: var.mean_offset,
            t_max,
            t_grid: vec![0.0],
            cf_values: vec![Complex64::new(1.0, 0.0)],
            density_grid: Vec::new(),
            delta,
            delta_error_estimate: 0.0,
            zeros_used,
            zero_digest: var.zero_digest.clone(),
            tail_model: var.tail,
            monte_carlo: None,
        });
    }
    if !(grid_step > 0.0 && grid_step < t_max) {
        return Err(DistError::BadGrid(grid_step));
    }
    let magnitude = characteristic_function(t_max, var).norm();
    if !(magnitude < DECAY_TOLERANCE) {
        return Err(DistError::InsufficientDecay { t_max, magnitude });
    }
    let (delta, delta_error_estimate) = cdf_at(var, 0.0, t_max);

    let steps = (t_max / grid_step).round() as usize;
    let h = t_max / steps as f64;
    let t_grid: Vec<f64> = (0..=steps).map(|i| i as f64 * h).collect();
    let cf_values: Vec<Complex64> = t_grid.iter().map(|&t| characteristic_function(t, var)).collect();

    // f(y) = (1/π) ∫_0^∞ Re(e^{−ity} Φ(t)) dt by the trapezoid rule
    let sigma = var.variance().sqrt();
    let lo = var.mean_offset - DENSITY_SPAN * sigma;
    let dy = 2.0 * DENSITY_SPAN * sigma / (DENSITY_POINTS - 1) as f64;
    let density_grid = (0..DENSITY_POINTS)
        .map(|j| {
            let y = lo + j as f64 * dy;
            let mut acc = CompensatedSum::new();
            for (i, (&t, phi)) in t_grid.iter().zip(&cf_values).enumerate() {
                let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
                acc.add(w * (phi * Complex64::from_polar(1.0, -t * y)).re);
            }
            (y, (acc.value() * h / std::f64::consts::PI).max(0.0))
        })
        .collect();

    Ok(DistributionResult {
        mean_offset: var.mean_offset,
        t_max,
        t_grid,
        cf_values,
        density_grid,
        delta,
        delta_error_estimate,
        zeros_used,
        zero_digest: var.zero_digest.clone(),
        tail_model: var.tail,
        monte_carlo: None,
    })
}

/// `n` draws of `Y`, reproducible from `seed`. Draws are made in batches,
/// each from its own ChaCha8 stream, so the output does not depend on how
/// batches are scheduled.
pub fn sample_values(var: &RandomRaceVariable, n: usize, seed: u64) -> Vec<f64> {
    let batches = n.div_ceil(BATCH);
    let run = |b: usize| -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let count = BATCH.min(n - b * BATCH);
        let sd_tail = var.tail.variance().sqrt();
        (0..count)
            .map(|_| {
                let mut s = 0.0;
                for &w in &var.weights {
                    let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
                    s += w * theta.cos();
                }
                let g: f64 = rng.sample(StandardNormal);
                var.mean_offset - s + sd_tail * g
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<f64>> = {
        use rayon::prelude::*;
        (0..batches).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<f64>> = (0..batches).map(run).collect();
    chunks.concat()
}

/// Monte Carlo statistics of `n ≥ 1` draws.
pub fn sample_y(var: &RandomRaceVariable, n: usize, seed: u64) -> SampleStats {
    assert!(n >= 1, "sample_y needs at least one draw");
    let mut values = sample_values(var, n, seed);
    let mean = values.iter().copied().sum::<CompensatedSum>().value() / n as f64;
    let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<CompensatedSum>().value();
    let variance = if n > 1 { ss / (n - 1) as f64 } else { 0.0 };
    let p_nonpositive = values.iter().filter(|&&v| v <= 0.0).count() as f64 / n as f64;
    values.sort_by(f64::total_cmp);
    let quantiles = [0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999]
        .iter()
        .map(|&q| {
            let i = ((q * n as f64).ceil() as usize).clamp(1, n) - 1;
            (q, values[i])
        })
        .collect();
    SampleStats {
        n,
        seed,
        mean,
        variance,
        standard_error: (variance / n as f64).sqrt(),
        p_nonpositive,
        quantiles,
    }
}
