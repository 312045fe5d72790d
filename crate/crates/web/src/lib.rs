//! WebAssembly entry points for the demo page in `www/`. Each export takes
//! plain numbers and returns a JSON string; the typed functions behind them
//! are public so they can be tested natively.

use prl_core::density::{bad_interval_density, partition, DecadeCoverage, Exponent};
use prl_core::dist::{delta_bias, sample_y, tail_variance, RandomRaceVariable, SampleStats, DEFAULT_GRID_STEP, DEFAULT_T_MAX};
use prl_core::races::{scan, KindSet, RaceKind, RaceState, ScanConfig};
use prl_core::zeros::ZeroTable;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest scan limit offered in the page.
pub const MAX_SCAN: u64 = 20_000_000;
/// Largest partition limit offered in the page.
pub const MAX_PARTITION: u64 = 100_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct BiasView {
    pub race: &'static str,
    pub zeros_used: usize,
    pub tail_variance: f64,
    pub delta: f64,
    pub delta_error: f64,
    /// `(y, density)`, thinned for plotting.
    pub density: Vec<(f64, f64)>,
    pub monte_carlo: Option<SampleStats>,
}

/// `Δ` and the density of the race variable over the first `zeros` bundled
/// zeros, optionally with `draws` Monte Carlo samples.
pub fn bias_view(zeros: usize, pi_race: bool, draws: usize, seed: u64) -> Result<BiasView, String> {
    let table = ZeroTable::bundled();
    if zeros == 0 || zeros > table.len() {
        return Err(format!("choose between 1 and {} zeros", table.len()));
    }
    let table = table.truncated(zeros);
    let var = if pi_race { RandomRaceVariable::pi(&table) } else { RandomRaceVariable::zhang(&table) }
        .map_err(|e| e.to_string())?;
    let r = delta_bias(&var, DEFAULT_T_MAX, DEFAULT_GRID_STEP).map_err(|e| e.to_string())?;
    Ok(BiasView {
        race: if pi_race { "pi" } else { "zhang" },
        zeros_used: r.zeros_used,
        tail_variance: tail_variance(&table).map_err(|e| e.to_string())?,
        delta: if pi_race { 1.0 - r.delta } else { r.delta },
        delta_error: r.delta_error_estimate,
        density: r.density_grid.iter().step_by(4).copied().collect(),
        monte_carlo: (draws > 0).then(|| sample_y(&var, draws, seed)),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TallyView {
    pub race: RaceKind,
    pub exceptional: u64,
    pub indeterminate: u64,
    pub examples: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanView {
    pub limit: u64,
    pub primes: u64,
    pub tallies: Vec<TallyView>,
    /// `(p, E_π, E_M, E_Z)` at about `points` evenly spaced primes.
    pub curve: Vec<(f64, f64, f64, f64)>,
}

/// Scan all three races to `limit`, keeping about `points` samples.
pub fn scan_view(limit: u64, points: u64) -> Result<ScanView, String> {
    if !(3..=MAX_SCAN).contains(&limit) {
        return Err(format!("limit must lie in [3, {MAX_SCAN}]"));
    }
    let expected = (limit as f64 / (limit as f64).ln()).max(1.0) as u64;
    let config = ScanConfig {
        kinds: KindSet::ALL,
        emit_every: (expected / points.max(1)).max(1),
        emit_exceptional: false,
        ..ScanConfig::default()
    };
    let mut curve = Vec::new();
    let summary = scan(&mut RaceState::new(), limit, &config, |p| {
        let v = |k| p.get(k).map_or(f64::NAN, |v| v.value);
        curve.push((p.x, v(RaceKind::Pi), v(RaceKind::Mertens), v(RaceKind::Zhang)));
    })
    .map_err(|e| e.to_string())?;
    Ok(ScanView {
        limit,
        primes: summary.primes_scanned,
        tallies: summary
            .tallies
            .iter()
            .map(|t| TallyView {
                race: t.kind,
                exceptional: t.exceptional,
                indeterminate: t.indeterminate,
                examples: t.examples.iter().take(8).copied().collect(),
            })
            .collect(),
        curve,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionView {
    pub limit: u64,
    pub eps: f64,
    pub intervals: u64,
    pub reciprocal_sum: f64,
    pub decades: Vec<DecadeCoverage>,
}

/// Per-decade share of `[1, limit]` covered by ε-bad intervals.
pub fn partition_view(limit: u64, eps: f64) -> Result<PartitionView, String> {
    if !(10..=MAX_PARTITION).contains(&limit) {
        return Err(format!("limit must lie in [10, {MAX_PARTITION}]"));
    }
    let x = limit as f64;
    let (mut intervals, mut reciprocal_sum) = (0, 0.0);
    for r in partition(x).map_err(|e| e.to_string())? {
        intervals += 1;
        reciprocal_sum += 1.0 / r.y_f64();
    }
    let report = bad_interval_density(eps, x, Exponent::ONE_THIRD).map_err(|e| e.to_string())?;
    Ok(PartitionView { limit, eps, intervals, reciprocal_sum, decades: report.decades })
}

fn json<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string())).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bias(zeros: usize, pi_race: bool, draws: usize, seed: u64) -> Result<String, JsValue> {
    json(bias_view(zeros, pi_race, draws, seed))
}

#[wasm_bindgen]
pub fn race_scan(limit: u64, points: u64) -> Result<String, JsValue> {
    json(scan_view(limit, points))
}

#[wasm_bindgen]
pub fn intervals(limit: u64, eps: f64) -> Result<String, JsValue> {
    json(partition_view(limit, eps))
}
