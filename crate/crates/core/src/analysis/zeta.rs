//! Riemann zeta on the real axis `s > 1` by Euler–Maclaurin summation.
//!
//! With `N` head terms and `M` correction terms,
//!
//! ```text
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{j=1}^{M} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1} + R_M
//! ```
//!
//! and for real `s` the remainder `R_M` is bounded by the first omitted
//! correction term. `N` grows with `s` so that the correction series
//! converges geometrically; the loop stops once a term falls below a fixed
//! fraction of `ζ(s) - 1`, and the omitted-term bound is asserted.

use super::AnalysisError;

/// `B_{2j} / (2j)!` for `j = 1..=15`.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_767e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_583e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_23e-18,
    -1.395_446_468_581_252_3e-19,
    3.534_707_039_629_467_5e-21,
    -8.953_517_427_037_547e-23,
    2.267_952_452_337_683e-24,
];

/// Relative size (against `ζ(s) - 1`) below which correction terms stop.
const TERM_TOL: f64 = 1e-18;

/// Value and first derivative of `ζ(s) - 1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ZetaParts {
    pub minus_one: f64,
    pub derivative: f64,
}

fn head_len(s: f64) -> usize {
    10 + s.ceil().min(200.0) as usize
}

/// Core evaluation with `s - 1` supplied separately so that `s = 1 + ε` with
/// tiny `ε` keeps full relative accuracy in the pole term.
pub(crate) fn zeta_parts(s_minus_one: f64) -> ZetaParts {
    let s = 1.0 + s_minus_one;
    let n = head_len(s);
    let ln_n = (n as f64).ln();

    let mut value = super::sum::CompensatedSum::new();
    let mut deriv = super::sum::CompensatedSum::new();
    // sum small-to-large for accuracy
    for k in (2..n).rev() {
        let lk = (k as f64).ln();
        let t = (-s * lk).exp();
        value.add(t);
        deriv.add(-lk * t);
    }
    let n_pow_minus_s = (-s * ln_n).exp();
    let pole = (-s_minus_one * ln_n).exp() / s_minus_one;
    value.add(pole);
    deriv.add(pole * (-ln_n - 1.0 / s_minus_one));
    value.add(0.5 * n_pow_minus_s);
    deriv.add(-0.5 * ln_n * n_pow_minus_s);

    let scale = value.value().abs();
    // rising factorial s(s+1)…(s+2j-2) and its log-derivative
    let mut rising = s;
    let mut rising_dlog = 1.0 / s;
    let mut n_pow = n_pow_minus_s * n as f64; // N^{-s+1}
    let inv_n2 = 1.0 / (n as f64 * n as f64);
    let mut converged = false;
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let a = s + (2 * j - 1) as f64;
            let b = s + (2 * j) as f64;
            rising *= a * b;
            rising_dlog += 1.0 / a + 1.0 / b;
        }
        n_pow *= inv_n2; // N^{-s-2j+1}
        let term = c * rising * n_pow;
        value.add(term);
        deriv.add(term * (rising_dlog - ln_n));
        if term.abs() <= TERM_TOL * scale {
            converged = true;
            break;
        }
    }
    assert!(
        converged,
        "Euler–Maclaurin remainder bound not met at s = {s}"
    );
    ZetaParts {
        minus_one: value.value(),
        derivative: deriv.value(),
    }
}

/// `ζ(b)` for real `b > 1`.
pub fn zeta_real(b: f64) -> Result<f64, AnalysisError> {
    Ok(1.0 + zeta_minus_one(b)?)
}

/// `ζ(b) - 1`, accurate in relative terms even when `b` is large.
pub fn zeta_minus_one(b: f64) -> Result<f64, AnalysisError> {
    if !(b > 1.0) || !b.is_finite() {
        return Err(AnalysisError::Domain {
            function: "zeta",
            arg: b,
        });
    }
    Ok(zeta_parts(b - 1.0).minus_one)
}

/// `log ζ(b)` for `b > 1`.
pub fn log_zeta(b: f64) -> Result<f64, AnalysisError> {
    Ok(zeta_minus_one(b)?.ln_1p())
}

/// `-ζ'(b)/ζ(b) = Σ Λ(n) n^{-b}` for `b > 1`.
pub fn neg_log_derivative(b: f64) -> Result<f64, AnalysisError> {
    if !(b > 1.0) || !b.is_finite() {
        return Err(AnalysisError::Domain {
            function: "zeta'/zeta",
            arg: b,
        });
    }
    let p = zeta_parts(b - 1.0);
    Ok(-p.derivative / (1.0 + p.minus_one))
}
