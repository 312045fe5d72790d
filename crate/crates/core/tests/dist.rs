use std::f64::consts::PI;

use num_complex::Complex64;
use prl_core::analysis::zero_reciprocal_total;
use prl_core::dist::{
    cdf_at, characteristic_function, delta_bias, sample_values, sample_y, tail_variance, weights, RandomRaceVariable,
    DEFAULT_GRID_STEP, DEFAULT_T_MAX,
};
use prl_core::zeros::{zero_sum_rho, ZeroTable};

#[test]
fn characteristic_function_basics() {
    let var = RandomRaceVariable::zhang(&ZeroTable::bundled()).unwrap();
    assert_eq!(characteristic_function(0.0, &var), Complex64::new(1.0, 0.0));
    for i in 0..400 {
        let t = i as f64 * 0.25 - 50.0;
        assert!(characteristic_function(t, &var).norm() <= 1.0);
    }
    let point = RandomRaceVariable::constant(1.0);
    let phi = characteristic_function(2.0, &point);
    assert!((phi - Complex64::from_polar(1.0, 2.0)).norm() < 1e-15);
    assert_eq!(delta_bias(&point, DEFAULT_T_MAX, DEFAULT_GRID_STEP).unwrap().delta, 0.0);
}

#[test]
fn weights_positive_decreasing() {
    let w = weights(&ZeroTable::bundled());
    assert!(w.iter().all(|&x| x > 0.0));
    assert!(w.windows(2).all(|p| p[0] > p[1]));
}

#[test]
fn tail_variance_against_zero_density() {
    let t = ZeroTable::bundled();
    let tv = tail_variance(&t).unwrap();
    assert!(tv > 0.0 && tv < 2.0 * zero_reciprocal_total());
    // 2 ∫_H^∞ log(s/2π)/(2π) · ds/(1/4+s²), midpoint rule on s = H + u/(1−u)
    let h = t.height();
    let n = 200_000;
    let mut integral = 0.0;
    for i in 0..n {
        let u = (i as f64 + 0.5) / n as f64;
        let s = h + u / (1.0 - u);
        let ds = 1.0 / ((1.0 - u) * (1.0 - u));
        integral += (s / (2.0 * PI)).ln() / (2.0 * PI) / (0.25 + s * s) * ds;
    }
    let integral = 2.0 * integral / n as f64;
    assert!((tv - integral).abs() < 0.02 * integral, "{tv} {integral}");
    let empty = ZeroTable::parse("").unwrap();
    assert!(tail_variance(&empty).is_err());
}

#[test]
fn delta_with_fixture() {
    let var = RandomRaceVariable::zhang(&ZeroTable::bundled()).unwrap();
    let r = delta_bias(&var, DEFAULT_T_MAX, DEFAULT_GRID_STEP).unwrap();
    assert!(r.delta > 1e-7 && r.delta < 5e-7, "{}", r.delta);
    assert!(r.delta_error_estimate < 1e-9);
    assert!((r.density_mass() - 1.0).abs() < 1e-6);
    assert!(r.density_grid.iter().all(|&(_, f)| f >= 0.0));
    assert_eq!(r.cf_values[0], Complex64::new(1.0, 0.0));
    assert_eq!(r.zeros_used, 100);
}

#[test]
fn moments_of_one_million_draws() {
    let table = ZeroTable::bundled();
    let var = RandomRaceVariable::zhang(&table).unwrap();
    let s = sample_y(&var, 1_000_000, 1);
    // oracle: 2 Σ_table 1/(1/4+γ²) + tail = 2 S_total
    let want = 2.0 * zero_sum_rho(&table).unwrap().rho + tail_variance(&table).unwrap();
    assert!((want - 2.0 * zero_reciprocal_total()).abs() < 1e-15);
    let sigma = want.sqrt();
    assert!((s.mean - 1.0).abs() <= 4.0 * sigma / 1000.0, "{}", s.mean);
    assert!((s.variance / want - 1.0).abs() < 0.01, "{} {want}", s.variance);
    // Δ ≈ 2.6e-7 against 1e6 draws: within three binomial standard errors
    let d = delta_bias(&var, DEFAULT_T_MAX, DEFAULT_GRID_STEP).unwrap().delta;
    let se = (d * (1.0 - d) / 1e6).sqrt();
    assert!((s.p_nonpositive - d).abs() <= 3.0 * se);
}

#[test]
fn inversion_matches_empirical_cdf() {
    let var = RandomRaceVariable::zhang(&ZeroTable::bundled()).unwrap();
    let r = delta_bias(&var, DEFAULT_T_MAX, DEFAULT_GRID_STEP).unwrap();
    let mut v = sample_values(&var, 1_000_000, 9);
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut ks: f64 = 0.0;
    for (y, f) in r.cdf_grid() {
        let emp = v.partition_point(|&s| s <= y) as f64 / n;
        ks = ks.max((emp - f).abs());
    }
    assert!(ks < 0.01, "{ks}");
}

#[test]
fn pi_and_zhang_mirror() {
    let t = ZeroTable::bundled();
    let z = RandomRaceVariable::zhang(&t).unwrap();
    let p = RandomRaceVariable::pi(&t).unwrap();
    let (fz, ez) = cdf_at(&z, 0.0, DEFAULT_T_MAX);
    let (fp, ep) = cdf_at(&p, 0.0, DEFAULT_T_MAX);
    assert!(((1.0 - fp) - fz).abs() <= ez + ep + 1e-12);
    for y in [-0.5, 0.0, 0.7, 1.3] {
        let (a, ea) = cdf_at(&z, y, DEFAULT_T_MAX);
        let (b, eb) = cdf_at(&p, -y, DEFAULT_T_MAX);
        assert!((a - (1.0 - b)).abs() <= ea + eb + 1e-9, "{y}");
    }
}

#[test]
fn seeded_runs_repeat() {
    let var = RandomRaceVariable::pi(&ZeroTable::bundled()).unwrap();
    let a = sample_y(&var, 200_000, 42);
    let b = sample_y(&var, 200_000, 42);
    assert_eq!(a, b);
    assert_ne!(sample_values(&var, 10, 1), sample_values(&var, 10, 2));
    // batches are independent of length: a prefix is reproduced
    let long = sample_values(&var, 70_000, 3);
    let short = sample_values(&var, 65_536, 3);
    assert_eq!(&long[..65_536], &short[..]);
}
