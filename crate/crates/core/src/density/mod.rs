//! Empirical logarithmic densities and the short-interval partition.
//!
//! Three estimators of how often a set `M` occurs, each reported at `x_max`
//! and at every power of ten below it:
//!
//! * `δ(M)  ≈ (1/log x) ∫_{M∩[1,x]} dt/t` for a union of real intervals,
//! * `δ′(M) ≈ (1/log log x) Σ_{p≤x, p∈M} 1/p`,
//! * `δ*(M) ≈ (1/log x) Σ_{p≤x, p∈M} (log p)/p`.
//!
//! Sets of primes exist with `δ′ = 1/2` but no `δ*`. The known examples are
//! unions of blocks between `2^{(2k−1)!}` and `2^{(2k)!}`, far out of
//! numerical reach, so nothing here tries to exhibit one.

mod partition;

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use partition::{partition, Exponent, IntervalRecord, Partition, PartitionError};

use crate::analysis::CompensatedSum;
use crate::format::sci17;
use crate::primes::{prime_stream, PrimeError, DEFAULT_SEGMENT};
use crate::races::{scan, KindSet, RaceError, RaceKind, RaceState, ScanConfig};

#[derive(Debug, Error)]
pub enum DensityError {
    #[error("x_max must be at least {min}, got {got}")]
    XMax { min: f64, got: f64 },
    #[error("intervals ({0}, {1}) and ({2}, {3}) overlap or are out of order")]
    Overlap(f64, f64, f64, f64),
    #[error("invalid interval ({0}, {1})")]
    BadInterval(f64, f64),
    #[error("eps must lie in (0, 1), got {0}")]
    Eps(f64),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Race(#[from] RaceError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    /// Continuous logarithmic density `δ`.
    Log,
    /// Prime-relative density `δ′` with weights `1/p`.
    Prime,
    /// Modified density `δ*` with weights `(log p)/p`.
    Star,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub estimator: Estimator,
    pub x_max: f64,
    pub value: f64,
    /// `(10^k, estimate at 10^k)` for each power of ten in `[10, x_max]`.
    pub per_decade: Vec<(f64, f64)>,
}

fn normalizer(est: Estimator, x: f64) -> f64 {
    match est {
        Estimator::Prime => x.ln().ln(),
        _ => x.ln(),
    }
}

/// Streams primes with a membership flag and accumulates `δ*` and `δ′`.
#[derive(Debug, Clone)]
pub struct PrimeDensityAccumulator {
    x_max: f64,
    star: CompensatedSum,
    prime: CompensatedSum,
    next_decade: f64,
    star_decades: Vec<(f64, f64)>,
    prime_decades: Vec<(f64, f64)>,
}

impl PrimeDensityAccumulator {
    pub fn new(x_max: f64) -> Self {
        Self {
            x_max,
            star: CompensatedSum::new(),
            prime: CompensatedSum::new(),
            next_decade: 10.0,
            star_decades: Vec::new(),
            prime_decades: Vec::new(),
        }
    }

    fn snapshot_through(&mut self, x: f64) {
        while self.next_decade <= x && self.next_decade <= self.x_max {
            let d = self.next_decade;
            self.star_decades.push((d, self.star.value() / normalizer(Estimator::Star, d)));
            self.prime_decades.push((d, self.prime.value() / normalizer(Estimator::Prime, d)));
            self.next_decade *= 10.0;
        }
    }

    /// Primes must arrive in increasing order.
    pub fn observe(&mut self, p: u64, member: bool) {
        let pf = p as f64;
        self.snapshot_through(pf - 0.5);
        if member {
            self.star.add(pf.ln() / pf);
            self.prime.add(1.0 / pf);
        }
    }

    /// `(δ*, δ′)` at `x_max`.
    pub fn finish(mut self) -> (DensityEstimate, DensityEstimate) {
        self.snapshot_through(self.x_max);
        let star = DensityEstimate {
            estimator: Estimator::Star,
            x_max: self.x_max,
            value: self.star.value() / normalizer(Estimator::Star, self.x_max),
            per_decade: self.star_decades,
        };
        let prime = DensityEstimate {
            estimator: Estimator::Prime,
            x_max: self.x_max,
            value: self.prime.value() / normalizer(Estimator::Prime, self.x_max),
            per_decade: self.prime_decades,
        };
        (star, prime)
    }
}

fn check_x_max(x_max: f64) -> Result<(), DensityError> {
    if x_max >= 1e3 && x_max.is_finite() {
        Ok(())
    } else {
        Err(DensityError::XMax { min: 1e3, got: x_max })
    }
}

fn both<F: FnMut(u64) -> bool>(mut member: F, x_max: f64) -> Result<(DensityEstimate, DensityEstimate), DensityError> {
    check_x_max(x_max)?;
    let mut acc = PrimeDensityAccumulator::new(x_max);
    for p in prime_stream(x_max.floor() as u64, DEFAULT_SEGMENT)? {
        acc.observe(p, member(p));
    }
    Ok(acc.finish())
}

/// `δ*` of the primes satisfying `member`.
pub fn delta_star<F: FnMut(u64) -> bool>(member: F, x_max: f64) -> Result<DensityEstimate, DensityError> {
    Ok(both(member, x_max)?.0)
}

/// `δ′` of the primes satisfying `member`.
pub fn delta_prime<F: FnMut(u64) -> bool>(member: F, x_max: f64) -> Result<DensityEstimate, DensityError> {
    Ok(both(member, x_max)?.1)
}

/// `(δ*, δ′)` of the primes that are members of a race's set (`Π`, Mertens
/// or Zhang primes), classified by a scan. Indeterminate primes count as
/// non-members; their number is returned alongside.
pub fn race_prime_densities(kind: RaceKind, x_max: f64) -> Result<(DensityEstimate, DensityEstimate, u64), DensityError> {
    check_x_max(x_max)?;
    let mut acc = PrimeDensityAccumulator::new(x_max);
    let mut indeterminate = 0u64;
    let config = ScanConfig {
        kinds: KindSet::only(kind),
        emit_every: 1,
        emit_exceptional: false,
        ..ScanConfig::default()
    };
    scan(&mut RaceState::new(), x_max.floor() as u64, &config, |pt| {
        let member = pt.get(kind).expect("requested race").member();
        indeterminate += member.is_none() as u64;
        acc.observe(pt.x as u64, member == Some(true));
    })?;
    let (star, prime) = acc.finish();
    Ok((star, prime, indeterminate))
}

/// `δ` of a finite union of disjoint intervals `(a, b)`, sorted ascending,
/// restricted to `[1, x_max]`.
pub fn delta_log(intervals: &[(f64, f64)], x_max: f64) -> Result<DensityEstimate, DensityError> {
    if !(x_max > 1.0) || !x_max.is_finite() {
        return Err(DensityError::XMax { min: 1.0, got: x_max });
    }
    for (i, &(a, b)) in intervals.iter().enumerate() {
        if !(a <= b) || !a.is_finite() || b.is_nan() {
            return Err(DensityError::BadInterval(a, b));
        }
        if i > 0 && a < intervals[i - 1].1 {
            let (pa, pb) = intervals[i - 1];
            return Err(DensityError::Overlap(pa, pb, a, b));
        }
    }
    let measure_to = |x: f64| -> f64 {
        intervals
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (a.max(1.0), b.min(x));
                if b > a {
                    (b / a).ln()
                } else {
                    0.0
                }
            })
            .sum::<CompensatedSum>()
            .value()
    };
    let mut per_decade = Vec::new();
    let mut d = 10.0;
    while d <= x_max {
        per_decade.push((d, measure_to(d) / d.ln()));
        d *= 10.0;
    }
    Ok(DensityEstimate {
        estimator: Estimator::Log,
        x_max,
        value: measure_to(x_max) / x_max.ln(),
        per_decade,
    })
}

/// Share of one decade of `[1, x_max]` covered by ε-bad intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecadeCoverage {
    pub lo: f64,
    pub hi: f64,
    pub intervals: u64,
    pub bad: u64,
    /// Lebesgue measure of bad intervals over decade length.
    pub natural: f64,
    /// `∫ dt/t` over bad intervals, over `log(hi/lo)`.
    pub logarithmic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BadIntervalReport {
    pub eps: f64,
    pub x_max: f64,
    pub exponent: Exponent,
    pub decades: Vec<DecadeCoverage>,
}

impl BadIntervalReport {
    pub fn decade(&self, lo: f64) -> Option<&DecadeCoverage> {
        self.decades.iter().find(|d| d.lo == lo)
    }
}

/// Per-decade coverage of `[1, x_max]` by ε-bad intervals `I_k`, where the
/// goodness test compares the prime count of `(y_k, y_k + y_k^θ]` with
/// `y_k^θ / log y_k`.
pub fn bad_interval_density(eps: f64, x_max: f64, exponent: Exponent) -> Result<BadIntervalReport, DensityError> {
    if !(eps > 0.0) {
        return Err(DensityError::Eps(eps));
    }
    if !(x_max >= 10.0) || !x_max.is_finite() {
        return Err(DensityError::XMax { min: 10.0, got: x_max });
    }
    let mut decades = Vec::new();
    let mut lo = 1.0;
    while lo < x_max {
        let hi = (lo * 10.0).min(x_max);
        decades.push(DecadeCoverage { lo, hi, intervals: 0, bad: 0, natural: 0.0, logarithmic: 0.0 });
        lo = hi;
    }
    let mut natural: Vec<CompensatedSum> = vec![CompensatedSum::new(); decades.len()];
    let mut logarithmic: Vec<CompensatedSum> = vec![CompensatedSum::new(); decades.len()];
    for rec in Partition::new(x_max, exponent)? {
        let bad = !rec.is_good(eps);
        let (a, b) = (rec.y_f64(), rec.end().to_f64());
        for (i, d) in decades.iter_mut().enumerate() {
            let (s, e) = (a.max(d.lo), b.min(d.hi));
            if e <= s {
                continue;
            }
            if a >= d.lo && a < d.hi {
                d.intervals += 1;
                d.bad += bad as u64;
            }
            if bad {
                natural[i].add(e - s);
                logarithmic[i].add((e / s).ln());
            }
        }
    }
    for (i, d) in decades.iter_mut().enumerate() {
        d.natural = natural[i].value() / (d.hi - d.lo);
        d.logarithmic = logarithmic[i].value() / (d.hi / d.lo).ln();
    }
    Ok(BadIntervalReport { eps, x_max, exponent, decades })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TitchmarshReport {
    pub checked: u64,
    /// Intervals of length `≤ e`, where the bound says nothing useful.
    pub skipped: u64,
    pub violations: Vec<IntervalRecord>,
    pub passed: bool,
}

/// Check `prime_count ≤ 2h / log h` for every record of length `h > e`.
pub fn titchmarsh_check_records<I: IntoIterator<Item = IntervalRecord>>(records: I) -> TitchmarshReport {
    let mut report = TitchmarshReport { checked: 0, skipped: 0, violations: Vec::new(), passed: true };
    for rec in records {
        let h = rec.length_f64();
        if h <= std::f64::consts::E {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        if rec.prime_count as f64 > 2.0 * h / h.ln() {
            report.violations.push(rec);
        }
    }
    report.passed = report.violations.is_empty();
    report
}

/// [`titchmarsh_check_records`] over the `θ = 1/3` partition of `[1, x_max]`.
pub fn titchmarsh_check(x_max: f64) -> Result<TitchmarshReport, DensityError> {
    check_x_max(x_max)?;
    Ok(titchmarsh_check_records(partition(x_max)?))
}

/// CSV header for [`write_interval_csv`].
pub fn interval_csv_header(eps: &[f64]) -> String {
    let mut h = String::from("k,y_k,length,prime_count,expected");
    for e in eps {
        h.push_str(&format!(",good_eps_{e}"));
    }
    h
}

/// One CSV row per record, with a 0/1 goodness column per `eps`.
pub fn write_interval_csv<W: Write, I: IntoIterator<Item = IntervalRecord>>(
    out: &mut W,
    records: I,
    eps: &[f64],
) -> Result<u64, DensityError> {
    writeln!(out, "{}", interval_csv_header(eps))?;
    let mut rows = 0;
    for r in records {
        write!(
            out,
            "{},{},{},{},{}",
            r.k,
            sci17(r.y_f64()),
            sci17(r.length_f64()),
            r.prime_count,
            sci17(r.expected)
        )?;
        for &e in eps {
            write!(out, ",{}", r.is_good(e) as u8)?;
        }
        writeln!(out)?;
        rows += 1;
    }
    Ok(rows)
}
