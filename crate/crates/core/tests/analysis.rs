//! Special functions and constants against independent oracles.
//!
//! Reference values marked "30-digit" were produced with an arbitrary-precision
//! library (mpmath) before the implementation existed and frozen here.

use prl_core::analysis::{
    bessel_j0, euler_gamma, li, log_zeta, log_zeta_integral, neg_log_derivative, zeta_real,
    CompensatedSum, Constants,
};
use prl_core::primes::{prime_power_tail_sum, prime_stream, DEFAULT_SEGMENT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// ---- ζ -------------------------------------------------------------------

#[test]
fn zeta_two_against_direct_series() {
    // Σ_{n≤N} n^{-2} plus the tail, bracketed by 1/(N+1) < tail < 1/N and
    // pinned to second order by the midpoint integral 1/(N + 1/2).
    let n = 1_000_000u64;
    let head: CompensatedSum = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
    let oracle = head.value() + 1.0 / (n as f64 + 0.5);
    let z = zeta_real(2.0).unwrap();
    assert!((z - 1.644_934_066_848_226_4).abs() < 2e-16);
    assert!(rel(z, oracle) < 1e-13, "{z} vs {oracle}");
}

/// Borwein's algorithm for the alternating zeta η(s); ζ(s) = η(s)/(1 − 2^{1−s}).
#[allow(clippy::needless_range_loop)]
fn zeta_borwein(s: f64) -> f64 {
    let n = 40usize;
    let mut d = vec![0.0f64; n + 1];
    let mut acc = 0.0;
    let mut fact_ratio = 1.0; // (n+i-1)! 4^i / ((n-i)! (2i)!) built incrementally
    for i in 0..=n {
        if i > 0 {
            let i_f = i as f64;
            fact_ratio *= (n as f64 + i_f - 1.0) * 4.0 * (n as f64 - i_f + 1.0)
                / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        }
        acc += fact_ratio;
        d[i] = n as f64 * acc;
    }
    let mut sum = 0.0;
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - d[n]) / ((k + 1) as f64).powf(s);
    }
    let eta = -sum / d[n];
    eta / (1.0 - 2f64.powf(1.0 - s))
}

#[test]
fn zeta_near_one_against_alternating_series() {
    let z = zeta_real(1.1).unwrap();
    // 30-digit: 10.5844484649508098263864007917
    assert!(rel(z, 10.584_448_464_950_81) < 1e-14, "{z}");
    let b = zeta_borwein(1.1);
    assert!(rel(z, b) < 1e-12, "{z} vs Borwein {b}");
    for s in [1.01, 1.5, 3.3, 7.0] {
        let a = zeta_real(s).unwrap();
        let b = zeta_borwein(s);
        assert!(rel(a, b) < 1e-12, "s={s}: {a} vs {b}");
    }
}

#[test]
fn zeta_fifty() {
    let z = zeta_real(50.0).unwrap();
    let expect = 1.0 + 2f64.powi(-50);
    assert!((z - expect).abs() <= 2.0 * f64::EPSILON);
}

#[test]
fn zeta_monotone_and_log_zeta_positive_decreasing() {
    let mut prev_z = f64::INFINITY;
    let mut prev_l = f64::INFINITY;
    let mut b = 1.001;
    while b < 45.0 {
        let z = zeta_real(b).unwrap();
        let l = log_zeta(b).unwrap();
        assert!(z > 1.0 && z < prev_z, "b={b}");
        assert!(l > 0.0 && l < prev_l, "b={b}");
        prev_z = z;
        prev_l = l;
        b *= 1.07;
    }
}

#[test]
fn log_derivative_at_two() {
    // 30-digit: -ζ'(2)/ζ(2) = 0.569960993094532806399864360020
    let v = neg_log_derivative(2.0).unwrap();
    assert!(rel(v, 0.569_960_993_094_532_8) < 1e-14, "{v}");
    // compare with a central difference of log ζ
    let h = 1e-5;
    let fd = -(log_zeta(2.0 + h).unwrap() - log_zeta(2.0 - h).unwrap()) / (2.0 * h);
    assert!(rel(v, fd) < 1e-8);
}

// ---- constants -------------------------------------------------------------

#[test]
fn log_zeta_integral_reference() {
    // 30-digit: ∫_1^∞ log ζ(b) db = 1.79756995862873940793025078212
    let v = log_zeta_integral();
    assert!((v - 1.797_569_958_628_739_4).abs() < 1e-13, "{v}");
    assert_eq!(v, Constants::get().lambda_log2_constant);
}

#[test]
fn log_zeta_integral_exceeds_tail_from_two() {
    let from_two = prl_core::analysis::log_zeta_tail_integral(2.0);
    assert!(from_two > 0.0 && from_two < log_zeta_integral());
}

#[test]
fn zhang_constant_reference() {
    // 30-digit: Σ_p 1/(p log p) = 1.63661632335126086856965800392
    let c = Constants::get();
    assert!((c.zhang_constant - 1.636_616_323_351_261).abs() < 1e-14, "{}", c.zhang_constant);
    // result − prime_power_tail_sum(2) = C_Z
    let diff = log_zeta_integral() - prime_power_tail_sum(2.0);
    assert!((diff - c.zhang_constant).abs() < 1e-13, "{diff}");
}

#[test]
fn zhang_constant_against_prime_sum_with_pnt_tail() {
    // Σ_{p≤X} 1/(p log p) + 1/log X; the PNT tail carries an O(1/(√X)) error
    let x = 10_000_000u64;
    let head: CompensatedSum = prime_stream(x, DEFAULT_SEGMENT)
        .unwrap()
        .map(|p| 1.0 / (p as f64 * (p as f64).ln()))
        .sum();
    let oracle = head.value() + 1.0 / (x as f64).ln();
    let c = Constants::get().zhang_constant;
    assert!((oracle - c).abs() < 1e-4, "{oracle} vs {c}");
}

#[test]
fn lambda_log2_consistency_identity() {
    let c = Constants::get();
    let rhs = c.zhang_constant + prime_power_tail_sum(2.0);
    assert!((c.lambda_log2_constant - rhs).abs() < 1e-12);
}

#[test]
fn euler_gamma_against_harmonic_limit() {
    // H_n − ln n − 1/(2n) + 1/(12n²) − 1/(120n⁴) + 1/(252n⁶)
    let n = 10_000u64;
    let h: CompensatedSum = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    let nf = n as f64;
    let oracle = h.value() - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf)
        - 1.0 / (120.0 * nf.powi(4))
        + 1.0 / (252.0 * nf.powi(6));
    let g = euler_gamma();
    assert!((g - oracle).abs() < 2e-15, "{g} vs {oracle}");
    assert_eq!(g, 0.577_215_664_901_532_9);
    assert!(g > 0.577 && g < 0.578);
}

// ---- li ----------------------------------------------------------------------

#[test]
fn li_reference_values() {
    // 30-digit references
    let cases = [
        (2.0, 1.045_163_780_117_493),
        (10.0, 6.165_599_504_787_298),
        (1e6, 78_627.549_159_462_18),
        (1e7, 664_918.405_048_568_9),
        (1e8, 5_762_209.375_448_031),
        (1e10, 455_055_614.586_623_1),
    ];
    for (x, want) in cases {
        let got = li(x).unwrap();
        assert!(rel(got, want) < 1e-14, "li({x}) = {got}, want {want}");
    }
}

/// Composite Simpson on `[a, b]` with `n` (even) panels.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn li_additivity_against_quadrature() {
    let q = simpson(|t| 1.0 / t.ln(), 2.0, 10.0, 20_000);
    let d = li(10.0).unwrap() - li(2.0).unwrap();
    assert!((q - d).abs() < 1e-12, "{q} vs {d}");
}

#[test]
fn li_exceeds_pi_at_one_million() {
    let pi = prl_core::primes::prime_count(1_000_000).unwrap();
    assert_eq!(pi, 78_498);
    let gap = li(1e6).unwrap() - pi as f64;
    assert!(gap > 0.0 && gap < 200.0, "{gap}");
}

// ---- J₀ ------------------------------------------------------------------------

/// J₀(t) = (1/π)∫_0^π cos(t sin θ) dθ; the trapezoid rule is spectrally
/// accurate for this periodic integrand.
fn j0_integral(t: f64) -> f64 {
    let n = 400;
    let h = std::f64::consts::PI / n as f64;
    // both endpoints have sin θ = 0
    let mut s = 1.0;
    for k in 1..n {
        s += (t * (k as f64 * h).sin()).cos();
    }
    s * h / std::f64::consts::PI
}

#[test]
fn j0_against_integral_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let t: f64 = rng.random::<f64>() * 60.0;
        let a = bessel_j0(t);
        let b = j0_integral(t);
        assert!((a - b).abs() < 1e-12, "t={t}: {a} vs {b}");
    }
}

#[test]
fn j0_reference_values_and_first_zero() {
    // 30-digit references
    for (t, want) in [
        (0.1, 0.997_501_562_066_04),
        (5.0, -0.177_596_771_314_338_3),
        (10.0, -0.245_935_764_451_348_34),
        (30.0, -0.086_367_983_581_040_21),
    ] {
        assert!((bessel_j0(t) - want).abs() < 1e-14, "J0({t})");
    }
    assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-10);
    assert_eq!(bessel_j0(0.0), 1.0);
}

// ---- compensated summation ------------------------------------------------------

#[test]
fn compensated_sum_against_exact_integer_oracle() {
    // rand's f64 samples are multiples of 2^-53, so scaled by 2^53 they are
    // exact integers and their sum is exact in u128.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut exact: u128 = 0;
    let mut s = CompensatedSum::new();
    let mut naive = 0.0f64;
    for _ in 0..10_000_000 {
        let x: f64 = rng.random();
        exact += (x * 2f64.powi(53)) as u128;
        s += x;
        naive += x;
    }
    let exact_f = exact as f64 / 2f64.powi(53);
    assert!(rel(s.value(), exact_f) < 1e-12);
    assert!(rel(s.value(), exact_f) <= rel(naive, exact_f));
}

// ---- prime-power tail ------------------------------------------------------------

/// Independent route: enumerate p ≤ P for every exponent and add the p > P
/// remainder of the square terms with the prime-number-theorem density,
/// `∫_P^∞ dt / (4 t² log² t)`. Cubes and higher beyond P are below 1e-16.
fn tail_by_enumeration(x: f64, p_max: u64) -> f64 {
    let mut s = CompensatedSum::new();
    for p in prime_stream(p_max, DEFAULT_SEGMENT).unwrap() {
        let pf = p as f64;
        let lp = pf.ln();
        let mut pk = pf * pf;
        let mut k = 2.0f64;
        while pk.is_finite() && 1.0 / (k * k * pk * lp) > 1e-22 {
            if pk > x {
                s += 1.0 / (k * k * pk * lp);
            }
            pk *= pf;
            k += 1.0;
        }
    }
    let pm = p_max as f64;
    let remainder = simpson(
        |u| {
            // t = pm / u, u ∈ (0, 1]
            let t = pm / u;
            1.0 / (4.0 * t * t * t.ln().powi(2)) * pm / (u * u)
        },
        1e-9,
        1.0,
        20_000,
    );
    s.value() + remainder
}

#[test]
fn prime_power_tail_at_two_against_enumeration() {
    let v = prime_power_tail_sum(2.0);
    // 30-digit: L(1) − C_Z = 0.16095363527747853936
    assert!((v - 0.160_953_635_277_478_54).abs() < 1e-14, "{v}");
    let oracle = tail_by_enumeration(2.0, 10_000_000);
    assert!((v - oracle).abs() < 2e-11, "{v} vs {oracle}");
    // dominated by p = 2, k = 2
    assert!(v > 1.0 / (16.0 * std::f64::consts::LN_2));
}

#[test]
fn prime_power_tail_at_one_million() {
    let v = prime_power_tail_sum(1e6);
    let oracle = tail_by_enumeration(1e6, 10_000_000);
    assert!((v - oracle).abs() < 2e-11, "{v} vs {oracle}");
    // leading piece: p ≥ 1009 squares
    let lead: f64 = prime_stream(2_000, DEFAULT_SEGMENT)
        .unwrap()
        .filter(|&p| p >= 1009)
        .map(|p| 1.0 / (4.0 * (p * p) as f64 * (p as f64).ln()))
        .sum();
    assert!(v > lead);
}

#[test]
fn prime_power_tail_asymptotic_scale() {
    // = 1/(√x log² x) + O(1/(√x log³ x))
    for x in [1e4, 1e6, 1e8, 1e10, 1e12] {
        let v = prime_power_tail_sum(x);
        let scale = 1.0 / (x.sqrt() * x.ln().powi(2));
        let ratio = v / scale;
        assert!(ratio > 0.5 && ratio < 2.0, "x={x}: ratio {ratio}");
    }
}

#[test]
fn prime_power_tail_positive_nonincreasing() {
    let mut prev = f64::INFINITY;
    let mut x = 2.0;
    while x < 1e9 {
        let v = prime_power_tail_sum(x);
        assert!(v > 0.0 && v <= prev, "x={x}");
        prev = v;
        x *= 1.9;
    }
}
