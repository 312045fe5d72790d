use super::{RaceError, RaceKind, RaceState};
use crate::analysis::{li, Constants};
use crate::primes::{prime_stream, DEFAULT_SEGMENT};

/// Maximal intervals of `[2, x_max]` on which the race error is positive
/// (nonnegative for Zhang), as sorted disjoint `(lo, hi)` pairs.
///
/// Between consecutive primes the sums are constant, so each sign change is
/// located in closed form: `E_M > 0 ⇔ x < exp(exp(S − γ))`,
/// `E_Z ≥ 0 ⇔ log x ≤ 1/tail`, and `E_π > 0 ⇔ li(x) < π`, the last solved by
/// bisection. Rounding budgets are not applied here.
pub fn positive_intervals(kind: RaceKind, x_max: f64) -> Result<Vec<(f64, f64)>, RaceError> {
    if !(x_max >= 2.0) || !x_max.is_finite() {
        return Err(RaceError::Domain { kind, x: x_max });
    }
    let consts = Constants::get();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut push = |a: f64, b: f64| {
        if b <= a {
            return;
        }
        match out.last_mut() {
            Some(last) if last.1 == a => last.1 = b,
            _ => out.push((a, b)),
        }
    };
    let mut state = RaceState::new();
    let primes: Vec<u64> = prime_stream(x_max.floor() as u64, DEFAULT_SEGMENT)?.collect();
    // [2, p_1) has empty sums and π = 0, which is negative in all three races
    // once x ≥ 2; each piece starts at a prime and holds the sums through it.
    for (i, &p) in primes.iter().enumerate() {
        state.absorb(p);
        let a = p as f64;
        let b = primes.get(i + 1).map_or(x_max, |&q| (q as f64).min(x_max));
        if b <= a {
            continue;
        }
        match kind {
            RaceKind::Mertens => {
                let cut = (state.mertens_log_sum().value() - consts.euler_gamma).exp().exp();
                push(a, b.min(cut));
            }
            RaceKind::Zhang => {
                let tail = state.zhang_partial().subtract_from(consts.zhang_constant);
                let cut = (1.0 / tail).exp();
                push(a, b.min(cut));
            }
            RaceKind::Pi => {
                let count = state.pi_count() as f64;
                if li(a)? >= count {
                    continue;
                }
                if li(b)? < count {
                    push(a, b);
                    continue;
                }
                let (mut lo, mut hi) = (a, b);
                while hi - lo > 1e-12 * hi {
                    let mid = 0.5 * (lo + hi);
                    if li(mid)? < count {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                push(a, lo);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mertens_positive_from_two() {
        let iv = positive_intervals(RaceKind::Mertens, 1e5).unwrap();
        assert_eq!(iv, vec![(2.0, 1e5)]);
    }

    #[test]
    fn zhang_dips_below_zero_just_before_three() {
        // on (2, 3] the tail is C_Z − 1/(2 log 2), so E_Z ≥ 0 up to exp(1/tail)
        let iv = positive_intervals(RaceKind::Zhang, 1e4).unwrap();
        assert_eq!(iv.len(), 2, "{iv:?}");
        let tail = Constants::get().zhang_constant - 1.0 / (2.0 * 2f64.ln());
        assert_eq!(iv[0].0, 2.0);
        assert!((iv[0].1 - (1.0 / tail).exp()).abs() < 1e-12);
        assert!(iv[0].1 > 2.9 && iv[0].1 < 3.0);
        assert_eq!(iv[1], (3.0, 1e4));
    }

    #[test]
    fn pi_never_positive() {
        assert!(positive_intervals(RaceKind::Pi, 1e5).unwrap().is_empty());
    }
}
