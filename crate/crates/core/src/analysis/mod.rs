//! Special functions and accumulation primitives.

mod bessel;
mod constants;
pub mod dd;
mod li;
pub mod quad;
mod sum;
mod zeta;

use thiserror::Error;

pub use bessel::bessel_j0;
pub use constants::{
    euler_gamma, log_zeta_integral, log_zeta_tail_integral, prime_log_power_sum,
    zero_reciprocal_total, zhang_constant, Constants,
};
pub use dd::DoubleDouble;
pub use li::li;
pub use sum::{compensated_sum, CompensatedSum};
pub use zeta::{log_zeta, neg_log_derivative, zeta_minus_one, zeta_real};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ζ'(0)/ζ(0) = log 2π`, from `ζ(0) = -1/2` and `ζ'(0) = -log(2π)/2`.
pub const LOG_DERIVATIVE_AT_ZERO: f64 = 1.837_877_066_409_345_5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("{function} is undefined at {arg}")]
    Domain { function: &'static str, arg: f64 },
}
