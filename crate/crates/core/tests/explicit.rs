mod common;

use num_complex::Complex64;
use prl_core::analysis::neg_log_derivative;
use prl_core::explicit::{
    e_m_truncated, e_pi_truncated, e_z_truncated, lambda_alpha_partial, symmetric_difference_bound, ExplicitError,
};
use prl_core::primes::{prime_count, prime_stream};
use prl_core::races::{e_pi, e_z, e_m, RaceState};
use prl_core::zeros::ZeroTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn direct_e_z(x: f64) -> (f64, f64) {
    let mut st = RaceState::new();
    st.advance_to(x.ceil() as u64).unwrap();
    (e_z(x, &st).unwrap().value, e_m(x, &st).unwrap().value)
}

#[test]
fn below_first_zero_is_the_mean() {
    let t = ZeroTable::bundled();
    assert_eq!(e_z_truncated(1e4, 10.0, &t).unwrap().value, 1.0);
    assert_eq!(e_m_truncated(1e4, 10.0, &t).unwrap().value, 1.0);
    assert_eq!(e_pi_truncated(1e4, 10.0, &t).unwrap().value, -1.0);
    assert!(matches!(e_z_truncated(4.0, 50.0, &t), Err(ExplicitError::Range { .. })));
}

#[test]
fn against_direct_at_ten_thousand() {
    let t = ZeroTable::bundled();
    let g100 = t.gammas()[99];
    let (ez, em) = direct_e_z(1e4 + 0.5);
    let r = e_z_truncated(1e4 + 0.5, g100, &t).unwrap();
    assert_eq!(r.zero_count_used, 100);
    assert!((r.value - ez).abs() <= r.error_envelope);
    let r = e_m_truncated(1e4 + 0.5, g100, &t).unwrap();
    assert!((r.value - em).abs() <= r.error_envelope);
}

#[test]
fn pi_against_sieve_count() {
    let t = common::large_table();
    let g = t.gammas()[999];
    let pi = prime_count(10_000).unwrap();
    assert_eq!(pi, 1229);
    let direct = e_pi(1e4, pi).unwrap().value;
    let r = e_pi_truncated(1e4, g, &t).unwrap();
    assert!((r.value - direct).abs() <= r.error_envelope);
}

#[test]
fn conjugate_pairs_and_race_equality() {
    let t = ZeroTable::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let x = rng.random_range(5.0..1e7);
        let tt = rng.random_range(5.0..t.height());
        let z = e_z_truncated(x, tt, &t).unwrap();
        assert_eq!(z, e_m_truncated(x, tt, &t).unwrap());
        // sum over ±γ of x^{iγ}/(−1/2+iγ), no pairing
        let mut s = Complex64::new(0.0, 0.0);
        for &g in t.up_to(tt) {
            for gg in [g, -g] {
                s += Complex64::new(0.0, gg * x.ln()).exp() / Complex64::new(-0.5, gg);
            }
        }
        assert!((z.value - (1.0 - s.re)).abs() < 1e-10, "{x}");
    }
}

#[test]
fn one_zero_moves_the_value_by_its_weight() {
    let t = ZeroTable::bundled();
    let x = 12_345.6;
    for n in 1..t.len() {
        let a = e_z_truncated(x, t.gammas()[n - 1], &t).unwrap().value;
        let b = e_z_truncated(x, t.gammas()[n], &t).unwrap().value;
        let g = t.gammas()[n];
        assert!((a - b).abs() <= 2.0 / (0.25 + g * g).sqrt() + 1e-15);
    }
}

#[test]
fn pi_and_zhang_terms_share_magnitudes() {
    let t = ZeroTable::bundled();
    let x = 777.7;
    // one-zero tables: the oscillating part has modulus 2/√(1/4+γ²) up to phase
    for n in 1..20 {
        let g = t.gammas()[n - 1];
        let one = ZeroTable::from_gammas(vec![g]);
        let Ok(one) = one else { continue };
        let z = e_z_truncated(x, g, &one).unwrap().value - 1.0;
        let p = e_pi_truncated(x, g, &one).unwrap().value + 1.0;
        let w = 2.0 / (0.25 + g * g).sqrt();
        assert!(z.abs() <= w + 1e-15 && p.abs() <= w + 1e-15);
    }
}

#[test]
fn von_mangoldt_psi() {
    let t = ZeroTable::bundled();
    let psi = 2520f64.ln();
    let r = lambda_alpha_partial(10.5, 0.0, t.gammas()[49], &t).unwrap();
    assert_eq!(r.zero_count_used, 50);
    assert!((r.value - psi).abs() <= r.error_envelope);
    assert!((r.value - psi).abs() < 0.2);
    // x = 2.5: the trivial-zero series contributes −½log(1 − x⁻²) ≈ 0.087
    let r = lambda_alpha_partial(2.5, 0.0, t.height(), &t).unwrap();
    assert!((r.value - 2f64.ln()).abs() < 0.01, "{}", r.value);
    let big = common::large_table();
    let r = lambda_alpha_partial(2.5, 0.0, big.height(), &big).unwrap();
    assert!((r.value - 2f64.ln()).abs() < 0.005, "{}", r.value);
}

fn psi(x: f64) -> f64 {
    let n = x.floor() as u64;
    let mut s = 0.0;
    for p in prime_stream(n, 1 << 12).unwrap() {
        let mut q = p;
        while q <= n {
            s += (p as f64).ln();
            q *= p;
        }
    }
    s
}

#[test]
fn log_two_pi_implied_at_two_points() {
    // value = x − log 2π − Σ_ρ + trivial, so value − ψ(x) + log 2π is the
    // constant the zeros imply; it must agree at both points within the
    // truncation error log x · x/(T⟨x⟩), ⟨x⟩ = 1/2 here
    let t = common::large_table();
    let implied: Vec<f64> = [30.5, 70.5]
        .iter()
        .map(|&x| {
            let r = lambda_alpha_partial(x, 0.0, t.height(), &t).unwrap();
            let slack = x.ln() * x / (t.height() * 0.5);
            let c = psi(x) - r.value + prl_core::analysis::LOG_DERIVATIVE_AT_ZERO;
            assert!((c - (2.0 * std::f64::consts::PI).ln()).abs() < slack, "{x}: {c}");
            c
        })
        .collect();
    assert!((implied[0] - implied[1]).abs() < 0.2);
    assert!((psi(10.5) - 2520f64.ln()).abs() < 1e-12);
}

#[test]
fn alpha_two_partial_sums() {
    let t = ZeroTable::bundled();
    let limit = 10_000_000u64;
    let mut direct = 0.0;
    for p in prime_stream(limit, 1 << 20).unwrap() {
        let l = (p as f64).ln();
        let mut q = p;
        loop {
            direct += l / (q as f64).powi(2);
            match q.checked_mul(p) {
                Some(n) if n <= limit => q = n,
                _ => break,
            }
        }
    }
    let target = neg_log_derivative(2.0).unwrap();
    assert!((direct - target).abs() < 2e-7, "{direct} {target}");
    let r = lambda_alpha_partial(limit as f64 + 0.5, 2.0, t.height(), &t).unwrap();
    assert!((r.value - direct).abs() <= r.error_envelope);
    assert!((r.value - target).abs() < 1e-6);
    assert!(matches!(lambda_alpha_partial(8.0, 2.0, 50.0, &t), Err(ExplicitError::PrimePower(_))));
    assert!(matches!(lambda_alpha_partial(10.5, 1.0, 50.0, &t), Err(ExplicitError::UnsupportedAlpha(_))));
}

#[test]
fn symmetric_difference_pilot_scale() {
    let r = symmetric_difference_bound((1e3, 1e4), (1e3, 1e4)).unwrap();
    assert!(r.sup <= r.calibrated_bound / 3.0 * (1.0 + 1e-15));
    assert!(r.passed);
    let r = symmetric_difference_bound((1e3, 1e4), (1e4, 1e6)).unwrap();
    assert_eq!(r.decades.len(), 2);
    assert!(r.passed, "{r:?}");
}

#[test]
fn residual_direct_consistency() {
    let (ez, em) = direct_e_z(1e4 + 0.5);
    // |E_M − E_Z| is O(1/log x)
    assert!((ez - em).abs() * (1e4f64).ln() < 2.0);
}

proptest::proptest! {
    #[test]
    fn mertens_and_zhang_formulas_coincide(x in 5.0f64..1e9, t in 5.0f64..236.0) {
        let table = ZeroTable::bundled();
        proptest::prop_assert_eq!(e_z_truncated(x, t, &table).unwrap(), e_m_truncated(x, t, &table).unwrap());
    }
}
