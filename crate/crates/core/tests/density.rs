use prl_core::analysis::{DoubleDouble, EULER_GAMMA};
use prl_core::density::{
    bad_interval_density, delta_log, delta_prime, delta_star, partition, race_prime_densities, titchmarsh_check,
    write_interval_csv, DensityError, Exponent, Partition,
};
use prl_core::primes::prime_stream;
use prl_core::races::{positive_intervals, RaceKind};

/// Mertens' second constant `B = γ + Σ_p (log(1 − 1/p) + 1/p)` and the
/// constant `E = −γ − Σ_p log p/(p(p−1))` in `Σ_{p≤x} log p/p = log x + E + o(1)`,
/// summed over primes to 10⁷ (tails below 1e-7).
fn mertens_constants() -> (f64, f64) {
    let mut b = EULER_GAMMA;
    let mut e = -EULER_GAMMA;
    for p in prime_stream(10_000_000, 1 << 20).unwrap() {
        let q = p as f64;
        b += (-1.0 / q).ln_1p() + 1.0 / q;
        e -= q.ln() / (q * (q - 1.0));
    }
    (b, e)
}

#[test]
fn all_primes_against_mertens_theorems() {
    let (b, e) = mertens_constants();
    assert!((b - 0.261_497_212_847_642_8).abs() < 1e-6);
    assert!((e + 1.332_582_275_733_220_9).abs() < 1e-6);
    let x = 1e6f64;
    let star = delta_star(|_| true, x).unwrap();
    assert!((star.value - (1.0 + e / x.ln())).abs() < 2e-3, "{}", star.value);
    let prime = delta_prime(|_| true, x).unwrap();
    let ll = x.ln().ln();
    assert!((prime.value - (ll + b) / ll).abs() < 1e-3, "{}", prime.value);
    assert!(star.per_decade.iter().all(|&(_, v)| v > 0.5 && v < 1.0));
}

#[test]
fn empty_and_complementary_predicates() {
    let x = 1e5;
    assert_eq!(delta_star(|_| false, x).unwrap().value, 0.0);
    assert_eq!(delta_prime(|_| false, x).unwrap().value, 0.0);
    let all = delta_star(|_| true, x).unwrap().value;
    let odd = delta_star(|p| p % 4 == 1, x).unwrap().value;
    let rest = delta_star(|p| p % 4 != 1, x).unwrap().value;
    assert!((odd + rest - all).abs() < 1e-15);
    assert!(matches!(delta_star(|_| true, 100.0), Err(DensityError::XMax { .. })));
}

#[test]
fn race_sets_to_one_million() {
    let (star, _, ind) = race_prime_densities(RaceKind::Pi, 1e6).unwrap();
    assert_eq!((star.value, ind), (0.0, 0));
    let (star, prime, _) = race_prime_densities(RaceKind::Mertens, 1e6).unwrap();
    let all = delta_star(|_| true, 1e6).unwrap().value;
    // every prime but 2
    assert!((all - star.value - 2f64.ln() / 2.0 / 1e6f64.ln()).abs() < 1e-14);
    assert!((star.value - prime.value).abs() < 0.1);
}

#[test]
fn logarithmic_density_of_intervals() {
    let x = 1e6;
    assert!((delta_log(&[(1.0, x)], x).unwrap().value - 1.0).abs() < 1e-15);
    assert!((delta_log(&[(1e3, x)], x).unwrap().value - 0.5).abs() < 1e-15);
    assert!(matches!(
        delta_log(&[(1.0, 10.0), (5.0, 20.0)], x),
        Err(DensityError::Overlap(..))
    ));
    let m = positive_intervals(RaceKind::Mertens, x).unwrap();
    let d = delta_log(&m, x).unwrap().value;
    assert!(d > 0.94 && d <= 1.0, "{d}");
}

#[test]
fn partition_recursion_and_tiling() {
    let recs: Vec<_> = partition(1e6).unwrap().collect();
    assert_eq!(recs[0].y_f64(), 1.0);
    assert_eq!(recs[1].y_f64(), 2.0);
    assert!((recs[2].y_f64() - (2.0 + 2f64.cbrt())).abs() < 1e-15);
    let mut y = DoubleDouble::ONE;
    for r in &recs {
        assert_eq!(r.y, y);
        assert!(r.length.to_f64() > 0.0);
        y = y + r.length;
    }
    assert!(recs.last().unwrap().y_f64() <= 1e6 && y.to_f64() > 1e6);
    let primes = prime_stream(y.to_f64().floor() as u64, 1 << 16).unwrap().count() as u64;
    assert_eq!(recs.iter().map(|r| r.prime_count).sum::<u64>(), primes);
}

#[test]
fn dyadic_block_counts() {
    let ys: Vec<f64> = partition(1e7).unwrap().map(|r| r.y_f64()).collect();
    let mut u = 2.0f64;
    while 2.0 * u <= 1e7 {
        let count = ys.iter().filter(|&&y| y >= u && y < 2.0 * u).count() as f64;
        let bound = u.powf(2.0 / 3.0);
        assert!(count <= bound.floor() + 1.0, "U = {u}");
        if u >= 4.0 {
            assert!(count <= bound * (1.0 + 1e-9), "U = {u}: {count} > {bound}");
        }
        u *= 2.0;
    }
    // the first block holds 2 and 2 + 2^{1/3}
    assert_eq!(ys.iter().filter(|&&y| (2.0..4.0).contains(&y)).count(), 2);
}

#[test]
fn reciprocal_power_sums() {
    let ys: Vec<f64> = partition(1e6).unwrap().map(|r| r.y_f64()).collect();
    for alpha in [0.7, 1.0, 2.0] {
        let s: f64 = ys.iter().map(|y| y.powf(-alpha)).sum();
        let bound = 1.0 / (1.0 - 2f64.powf(2.0 / 3.0 - alpha));
        assert!(s <= bound, "α = {alpha}: {s} > {bound}");
    }
    let s1: f64 = ys.iter().map(|y| 1.0 / y).sum();
    assert!((s1 - 3.709).abs() < 1e-3, "{s1}");
}

#[test]
fn bad_interval_trends() {
    let r = bad_interval_density(0.5, 1e7, Exponent::ONE_THIRD).unwrap();
    assert_eq!(r.decades.len(), 7);
    let early = r.decade(1e2).unwrap();
    let late = r.decade(1e6).unwrap();
    assert!(late.natural < early.natural && late.logarithmic < early.logarithmic);

    let loose = bad_interval_density(10.0, 1e6, Exponent::ONE_THIRD).unwrap();
    assert!(loose.decades.iter().filter(|d| d.lo >= 10.0).all(|d| d.bad == 0), "{loose:?}");

    let tight = bad_interval_density(1e-6, 1e6, Exponent::ONE_THIRD).unwrap();
    for d in tight.decades.iter().filter(|d| d.lo >= 100.0) {
        assert!(d.bad as f64 >= 0.99 * d.intervals as f64);
    }
    assert!(bad_interval_density(0.0, 1e6, Exponent::ONE_THIRD).is_err());
}

#[test]
fn other_exponents() {
    let half = Exponent::new(1, 2).unwrap();
    let n = Partition::new(1e4, half).unwrap().count();
    // y grows like (y^{1/2}) per step: about 2√x steps
    assert!((n as f64 - 200.0).abs() < 10.0, "{n}");
    assert!(Exponent::new(1, 7).is_err());
}

#[test]
fn titchmarsh_to_one_million() {
    let r = titchmarsh_check(1e6).unwrap();
    assert!(r.passed && r.checked > 0 && r.skipped > 0);
}

#[test]
fn csv_rows() {
    let mut out = Vec::new();
    let rows = write_interval_csv(&mut out, partition(1000.0).unwrap(), &[0.5, 10.0]).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len() as u64, rows + 1);
    assert_eq!(lines[0], "k,y_k,length,prime_count,expected,good_eps_0.5,good_eps_10");
    assert!(lines[1].starts_with("1,1.0000000000000000e0,1.0000000000000000e0,1,inf,0,0"));
}
