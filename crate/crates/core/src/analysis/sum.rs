use std::iter::Sum;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

/// Neumaier-compensated running sum.
///
/// `primary` holds the rounded running total and `carry` the accumulated
/// low-order error. The represented value is `primary + carry`. Both halves
/// are part of the state so that a sum can be checkpointed and resumed
/// bit-for-bit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CompensatedSum {
    primary: f64,
    carry: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self { primary: 0.0, carry: 0.0 }
    }

    pub const fn from_parts(primary: f64, carry: f64) -> Self {
        Self { primary, carry }
    }

    pub fn primary(&self) -> f64 {
        self.primary
    }

    pub fn carry(&self) -> f64 {
        self.carry
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.primary + x;
        if self.primary.abs() >= x.abs() {
            self.carry += (self.primary - t) + x;
        } else {
            self.carry += (x - t) + self.primary;
        }
        self.primary = t;
    }

    /// Best f64 estimate of the sum.
    #[inline]
    pub fn value(&self) -> f64 {
        self.primary + self.carry
    }

    /// `c - self` evaluated without first rounding `self` to a single f64.
    pub fn subtract_from(&self, c: f64) -> f64 {
        (c - self.primary) - self.carry
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl Sum<f64> for CompensatedSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated sum of an iterator, rounded to f64.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().sum::<CompensatedSum>().value()
}
