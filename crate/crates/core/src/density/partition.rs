use std::iter::Peekable;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::DoubleDouble;
use crate::primes::{prime_stream, PrimeError, PrimeStream, DEFAULT_SEGMENT};

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("interval exponent {num}/{den} must lie in (1/6, 1]")]
    Exponent { num: u32, den: u32 },
    #[error("x_max must be at least {min}, got {got}")]
    XMax { min: f64, got: f64 },
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

/// Interval length exponent `θ = num/den`, so that `|I(y)| = y^θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub num: u32,
    pub den: u32,
}

impl Exponent {
    pub const ONE_THIRD: Exponent = Exponent { num: 1, den: 3 };

    /// Accepts `1/6 < num/den ≤ 1`.
    pub fn new(num: u32, den: u32) -> Result<Self, PartitionError> {
        if den == 0 || 6 * num <= den || num > den {
            return Err(PartitionError::Exponent { num, den });
        }
        Ok(Self { num, den })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn power(&self, y: DoubleDouble) -> DoubleDouble {
        y.nth_root(self.den).powi(self.num)
    }
}

impl Default for Exponent {
    fn default() -> Self {
        Self::ONE_THIRD
    }
}

/// One interval `I_k = (y_k, y_k + y_k^θ]` of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub k: u64,
    /// `y_k` to double-double precision.
    pub y: DoubleDouble,
    pub length: DoubleDouble,
    /// Primes in `(y_k, y_{k+1}]`.
    pub prime_count: u64,
    /// `y_k^θ / log y_k`; infinite for `y_1 = 1`.
    #[serde(with = "crate::format::nonfinite")]
    pub expected: f64,
}

impl IntervalRecord {
    pub fn y_f64(&self) -> f64 {
        self.y.to_f64()
    }

    pub fn length_f64(&self) -> f64 {
        self.length.to_f64()
    }

    pub fn end(&self) -> DoubleDouble {
        self.y + self.length
    }

    /// `|prime_count − expected| ≤ eps · expected`. The first interval, with
    /// an infinite target, is never good.
    pub fn is_good(&self, eps: f64) -> bool {
        self.expected.is_finite() && (self.prime_count as f64 - self.expected).abs() <= eps * self.expected
    }
}

/// `⌊y⌋` for a double-double.
pub(crate) fn floor_dd(y: DoubleDouble) -> u64 {
    let f = y.hi.floor();
    let f = if f == y.hi && y.lo < 0.0 { f - 1.0 } else { f };
    f as u64
}

/// The recursion `y_1 = 1`, `y_{k+1} = y_k + y_k^θ` for every `y_k ≤ x_max`,
/// with prime counts from a single sieve pass.
#[derive(Debug)]
pub struct Partition {
    exponent: Exponent,
    x_max: f64,
    k: u64,
    y: DoubleDouble,
    primes: Peekable<PrimeStream>,
}

impl Partition {
    pub fn new(x_max: f64, exponent: Exponent) -> Result<Self, PartitionError> {
        if !(x_max >= 2.0) || !x_max.is_finite() {
            return Err(PartitionError::XMax { min: 2.0, got: x_max });
        }
        // the last interval starts at or below x_max and ends within x_max^θ of it
        let end = (x_max + x_max.powf(exponent.value())).ceil() as u64 + 1;
        Ok(Self {
            exponent,
            x_max,
            k: 1,
            y: DoubleDouble::ONE,
            primes: prime_stream(end, DEFAULT_SEGMENT)?.peekable(),
        })
    }
}

impl Iterator for Partition {
    type Item = IntervalRecord;

    fn next(&mut self) -> Option<IntervalRecord> {
        if self.y.hi > self.x_max {
            return None;
        }
        let y = self.y;
        let length = self.exponent.power(y);
        let next = y + length;
        let lo = floor_dd(y);
        let hi = floor_dd(next);
        while self.primes.next_if(|&p| p <= lo).is_some() {}
        let mut prime_count = 0;
        while self.primes.next_if(|&p| p <= hi).is_some() {
            prime_count += 1;
        }
        let yf = y.to_f64();
        let expected = if yf > 1.0 { length.to_f64() / yf.ln() } else { f64::INFINITY };
        let record = IntervalRecord { k: self.k, y, length, prime_count, expected };
        self.k += 1;
        self.y = next;
        Some(record)
    }
}

/// Partition of `[1, x_max]` with `θ = 1/3`.
pub fn partition(x_max: f64) -> Result<Partition, PartitionError> {
    Partition::new(x_max, Exponent::ONE_THIRD)
}
