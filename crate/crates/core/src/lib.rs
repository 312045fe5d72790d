//! Prime number races.
//!
//! Normalized error functions for the races π vs li, the Mertens product
//! against `e^γ log x`, and the Zhang sum `Σ_{p≥x} 1/(p log p)` against
//! `1/log x`; their truncated explicit formulas over zeta zeros; the limiting
//! distribution of the associated random variable and its bias probability;
//! and empirical logarithmic-density estimators, including the short-interval
//! partition `y_{k+1} = y_k + y_k^{1/3}` with ε-good/ε-bad classification.

// `!(a < b)` is used on purpose to reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod density;
pub mod dist;
pub mod explicit;
pub mod format;
pub mod primes;
pub mod races;
pub mod zeros;
