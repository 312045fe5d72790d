use std::f64::consts::{FRAC_PI_4, PI};

const SERIES_MAX: f64 = 5.0;
const RECURRENCE_MAX: f64 = 25.0;

/// Bessel function of the first kind of order zero, `J₀(t)`.
///
/// Power series for `|t| ≤ 5`, Miller backward recurrence normalised by
/// `J₀ + 2ΣJ_{2k} = 1` up to 25, Hankel asymptotics beyond.
pub fn bessel_j0(t: f64) -> f64 {
    let x = t.abs();
    if x <= SERIES_MAX {
        series(x)
    } else if x <= RECURRENCE_MAX {
        miller(x)
    } else {
        hankel(x)
    }
}

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term.abs() < 1e-18 {
            return sum;
        }
        k += 1.0;
    }
}

fn miller(x: f64) -> f64 {
    // start well above x so the minimal solution dominates
    let start = (x as usize + 30 + (x.sqrt() * 10.0) as usize) & !1;
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0; // J_{k+1}
    let mut j_cur = 1e-300; // J_k
    let mut norm = 0.0;
    let mut j0 = 0.0;
    for k in (1..=start).rev() {
        let j_prev = k as f64 * two_over_x * j_cur - j_next; // J_{k-1}
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
        }
        let order = k - 1;
        if order == 0 {
            j0 = j_cur;
        } else if order % 2 == 0 {
            norm += 2.0 * j_cur;
        }
    }
    j0 / (norm + j0)
}

fn hankel(x: f64) -> f64 {
    // J₀(x) = √(2/πx) (P cos χ − Q sin χ), χ = x − π/4, with
    // a_k = (−1)^k Π_{i≤k} (2i−1)² / (k! (8x)^k),
    // P = Σ_{k even} (−1)^{k/2} a_k,  Q = Σ_{k odd} (−1)^{(k−1)/2} a_k
    let z = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200u32 {
        let odd = (2 * k - 1) as f64;
        a *= -(odd * odd) / (k as f64 * z);
        if a.abs() >= last || a.abs() < 1e-18 {
            break;
        }
        last = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
