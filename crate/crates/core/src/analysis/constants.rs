//! Constants built from real-argument ζ.
//!
//! Write `L(b) = ∫_b^∞ log ζ(v) dv` and `S(k) = Σ_p 1/(p^k log p)`.
//! Integrating the Möbius inversion `Σ_p p^{-u} = Σ_m μ(m)/m · log ζ(mu)`
//! from `k` to ∞ gives
//!
//! ```text
//! S(k) = Σ_{m≥1} μ(m)/m² · L(mk),
//! ```
//!
//! which converges like `2^{-mk}`. `S(1)` is the Zhang constant and
//! `L(1) = Σ_n Λ(n)/(n log² n)`.

use std::sync::OnceLock;

use super::quad::integrate;
use super::zeta::zeta_parts;
use super::EULER_GAMMA;

/// Largest exponent for which `S(k)` is tabulated; beyond it `S(k) < 2^{-60}`.
pub(crate) const MAX_POWER: usize = 64;

/// Exponent from which `S(k)` is summed directly over small primes.
const DIRECT_FROM: usize = 12;

const QUAD_TOL: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub euler_gamma: f64,
    /// `C_Z = Σ_p 1/(p log p)`.
    pub zhang_constant: f64,
    /// `Σ_n Λ(n)/(n log² n) = ∫_1^∞ log ζ(b) db`.
    pub lambda_log2_constant: f64,
}

impl Constants {
    pub fn get() -> &'static Constants {
        static CELL: OnceLock<Constants> = OnceLock::new();
        CELL.get_or_init(|| Constants {
            euler_gamma: EULER_GAMMA,
            zhang_constant: prime_log_power_sum(1),
            lambda_log2_constant: log_zeta_integral(),
        })
    }
}

/// Euler–Mascheroni constant γ.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// `∫_1^∞ log ζ(b) db`.
///
/// The logarithmic singularity at `b = 1` is removed with `b = 1 + e^{-u}`,
/// which turns `[1, 2]` into `u ∈ [0, ∞)` with integrand
/// `log ζ(1 + e^{-u}) e^{-u} ≈ u e^{-u}`.
pub fn log_zeta_integral() -> f64 {
    log_zeta_tail_integral(1.0)
}

/// `L(b) = ∫_b^∞ log ζ(v) dv` for `b ≥ 1`.
pub fn log_zeta_tail_integral(b: f64) -> f64 {
    assert!(b >= 1.0, "L(b) needs b >= 1, got {b}");
    let mut total = 0.0;
    if b < 2.0 {
        let u_max = if b == 1.0 { 50.0 } else { -(b - 1.0).ln() };
        let near = integrate(
            |u| {
                let eps = (-u).exp();
                zeta_parts(eps).minus_one.ln_1p() * eps
            },
            0.0,
            u_max,
            QUAD_TOL,
            1e-16,
        );
        total += near.value;
    }
    let c = b.max(2.0);
    // log ζ(v) ≈ 2^{-v}; past c + 64 the remainder is below 2^{-c-64}/ln 2
    let span = 64.0;
    let far = integrate(
        |v| zeta_parts(v - 1.0).minus_one.ln_1p(),
        c,
        c + span,
        QUAD_TOL * 2f64.powf(-c + 2.0),
        1e-16,
    );
    let rest = 2f64.powf(-(c + span)) / std::f64::consts::LN_2;
    total + far.value + rest
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn small_primes(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

fn compute_prime_log_power_sum(k: usize) -> f64 {
    if k >= DIRECT_FROM {
        // (2/211)^12 < 1e-24: primes up to 211 suffice
        let mut terms: Vec<f64> = small_primes(211)
            .into_iter()
            .map(|p| (p as f64).powi(-(k as i32)) / (p as f64).ln())
            .collect();
        terms.reverse();
        return super::sum::compensated_sum(terms);
    }
    let mut terms = Vec::new();
    for m in 1.. {
        let b = (m * k) as f64;
        let bound = 2f64.powf(-b) / std::f64::consts::LN_2 / (m * m) as f64;
        if bound < 1e-20 {
            break;
        }
        let mu = mobius(m);
        if mu != 0 {
            terms.push(mu as f64 / (m * m) as f64 * log_zeta_tail_integral(b));
        }
    }
    terms.reverse();
    super::sum::compensated_sum(terms)
}

/// `S(k) = Σ_p 1/(p^k log p)` for `k ≥ 1`.
pub fn prime_log_power_sum(k: usize) -> f64 {
    assert!(k >= 1);
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    if k > MAX_POWER {
        return compute_prime_log_power_sum(k);
    }
    TABLE.get_or_init(|| (1..=MAX_POWER).map(compute_prime_log_power_sum).collect())[k - 1]
}

/// `C_Z = Σ_p 1/(p log p)`.
pub fn zhang_constant() -> f64 {
    Constants::get().zhang_constant
}

/// Classical value of `Σ_{γ>0} 1/(1/4 + γ²) = (2 + γ_E − log 4π)/2` over the
/// positive ordinates of the nontrivial zeros (assuming RH).
pub fn zero_reciprocal_total() -> f64 {
    0.5 * (2.0 + EULER_GAMMA - (4.0 * std::f64::consts::PI).ln())
}
