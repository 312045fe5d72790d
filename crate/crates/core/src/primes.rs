//! Segmented sieve of Eratosthenes over odd numbers, and prime-power sums.

use thiserror::Error;

use crate::analysis::{compensated_sum, prime_log_power_sum};

/// Largest exclusive bound accepted by the sieve. Keeps `p²` well inside u64.
pub const DEFAULT_LIMIT: u64 = 1 << 40;

/// Default number of integers covered by one segment.
pub const DEFAULT_SEGMENT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("range [{lo}, {hi}) exceeds the sieve limit {limit}")]
    RangeExceedsLimit { lo: u64, hi: u64, limit: u64 },
    #[error("invalid range: lo = {lo} > hi = {hi}")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("segment size must be at least 2, got {0}")]
    SegmentTooSmall(u64),
}

/// The primes in `[lo, hi)`, ascending. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
}

impl Segment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn into_primes(self) -> Vec<u64> {
        self.primes
    }
}

/// `p^k` with `k ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub value: u64,
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// Plain sieve for the odd base primes `3 ≤ p ≤ bound`.
fn base_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n / 2 + 1]; // index i ↔ 2i+1
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < composite.len() {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    (1..composite.len())
        .filter(|&i| !composite[i] && 2 * i < n)
        .map(|i| (2 * i + 1) as u64)
        .collect()
}

/// Sieve `[lo, hi)` with precomputed odd base primes covering `√(hi-1)`.
fn sieve_with_base(lo: u64, hi: u64, base: &[u64], bits: &mut Vec<u64>) -> Segment {
    let mut primes = Vec::new();
    if hi <= lo {
        return Segment { lo, hi, primes };
    }
    if lo <= 2 && 2 < hi {
        primes.push(2);
    }
    let first_odd = (lo.max(3)) | 1;
    if first_odd >= hi {
        return Segment { lo, hi, primes };
    }
    let count = ((hi - first_odd) as usize).div_ceil(2); // odd values first_odd + 2i < hi
    let words = count.div_ceil(64);
    bits.clear();
    bits.resize(words, 0);
    for &p in base {
        let p2 = p * p;
        if p2 >= hi {
            break;
        }
        // first odd multiple of p that is ≥ max(p², first_odd)
        let mut start = if p2 >= first_odd {
            p2
        } else {
            let m = first_odd.div_ceil(p) * p;
            if m % 2 == 0 {
                m + p
            } else {
                m
            }
        };
        let step = 2 * p;
        while start < hi {
            let idx = ((start - first_odd) / 2) as usize;
            bits[idx >> 6] |= 1 << (idx & 63);
            start += step;
        }
    }
    primes.reserve(count / 8);
    for (w, &word) in bits.iter().enumerate() {
        let mut free = !word;
        while free != 0 {
            let b = free.trailing_zeros() as usize;
            free &= free - 1;
            let idx = w * 64 + b;
            if idx >= count {
                break;
            }
            let n = first_odd + 2 * idx as u64;
            primes.push(n);
        }
    }
    Segment { lo, hi, primes }
}

fn check_range(lo: u64, hi: u64, limit: u64) -> Result<(), PrimeError> {
    if lo > hi {
        return Err(PrimeError::InvalidRange { lo, hi });
    }
    if hi > limit {
        return Err(PrimeError::RangeExceedsLimit { lo, hi, limit });
    }
    Ok(())
}

/// Exactly the primes in `[lo, hi)`.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<Segment, PrimeError> {
    check_range(lo, hi, DEFAULT_LIMIT)?;
    let base = base_primes(isqrt(hi.saturating_sub(1)));
    let mut bits = Vec::new();
    Ok(sieve_with_base(lo, hi, &base, &mut bits))
}

/// Sieve `[lo, hi)` as consecutive segments of `segment_size` values, in
/// parallel when the `parallel` feature is on. Segments come back in order.
pub fn sieve_segments(lo: u64, hi: u64, segment_size: u64) -> Result<Vec<Segment>, PrimeError> {
    check_range(lo, hi, DEFAULT_LIMIT)?;
    if segment_size < 2 {
        return Err(PrimeError::SegmentTooSmall(segment_size));
    }
    let base = base_primes(isqrt(hi.saturating_sub(1)));
    let bounds: Vec<(u64, u64)> = (0..)
        .map(|i| lo + i * segment_size)
        .take_while(|&a| a < hi)
        .map(|a| (a, (a + segment_size).min(hi)))
        .collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(bounds
            .par_iter()
            .map_init(Vec::new, |bits, &(a, b)| sieve_with_base(a, b, &base, bits))
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut bits = Vec::new();
        Ok(bounds
            .iter()
            .map(|&(a, b)| sieve_with_base(a, b, &base, &mut bits))
            .collect())
    }
}

/// Ascending iterator over the primes in `[lo, limit]`, one segment at a time.
#[derive(Debug)]
pub struct PrimeStream {
    base: Vec<u64>,
    bits: Vec<u64>,
    next_lo: u64,
    end: u64, // exclusive
    segment_size: u64,
    current: std::vec::IntoIter<u64>,
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(p) = self.current.next() {
                return Some(p);
            }
            if self.next_lo >= self.end {
                return None;
            }
            let hi = (self.next_lo + self.segment_size).min(self.end);
            let seg = sieve_with_base(self.next_lo, hi, &self.base, &mut self.bits);
            self.next_lo = hi;
            self.current = seg.into_primes().into_iter();
        }
    }
}

/// All primes `≤ limit`, ascending.
pub fn prime_stream(limit: u64, segment_size: u64) -> Result<PrimeStream, PrimeError> {
    prime_stream_from(0, limit, segment_size)
}

/// All primes `p` with `lo ≤ p ≤ limit`, ascending.
pub fn prime_stream_from(lo: u64, limit: u64, segment_size: u64) -> Result<PrimeStream, PrimeError> {
    if segment_size < 2 {
        return Err(PrimeError::SegmentTooSmall(segment_size));
    }
    let end = limit.saturating_add(1).max(lo);
    check_range(lo, end, DEFAULT_LIMIT)?;
    Ok(PrimeStream {
        base: base_primes(isqrt(end.saturating_sub(1))),
        bits: Vec::new(),
        next_lo: lo,
        end,
        segment_size,
        current: Vec::new().into_iter(),
    })
}

/// `π(x)` for integer `x`, by sieving.
pub fn prime_count(x: u64) -> Result<u64, PrimeError> {
    Ok(prime_stream(x, DEFAULT_SEGMENT)?.count() as u64)
}

/// Proper prime powers `p^k ≤ limit`, `k ≥ 2`, ascending by value.
pub fn prime_powers(limit: u64) -> Result<Vec<PrimePower>, PrimeError> {
    let mut out = Vec::new();
    for p in prime_stream(isqrt(limit), DEFAULT_SEGMENT)? {
        let mut value = p * p;
        let mut k = 2;
        while value <= limit {
            out.push(PrimePower { p, k, value });
            match value.checked_mul(p) {
                Some(v) => value = v,
                None => break,
            }
            k += 1;
        }
    }
    out.sort_by_key(|pp| pp.value);
    Ok(out)
}

/// `Σ_{p^k > x, k ≥ 2} 1/(k² p^k log p)`, for `x ≥ 2`.
///
/// For each `k`, the sum over `p^k > x` is the full series
/// `S(k) = Σ_p 1/(p^k log p)` minus the finite head `p^k ≤ x`. The head is
/// enumerated exactly; `S(k)` comes from the log-ζ integrals in `analysis`.
/// Exponents stop once `S(k)/k² < 10⁻¹⁸`.
pub fn prime_power_tail_sum(x: f64) -> f64 {
    assert!(x >= 2.0, "prime_power_tail_sum needs x >= 2, got {x}");
    let xi = x.floor().min(u64::MAX as f64) as u64;
    let mut total = Vec::new();
    for k in 2u32.. {
        let full = prime_log_power_sum(k as usize);
        let weight = 1.0 / (k * k) as f64;
        if full * weight < 1e-18 {
            break;
        }
        // primes with p^k ≤ x
        let root = integer_root(xi, k);
        let head = if root >= 2 {
            let terms: Vec<f64> = prime_stream(root, DEFAULT_SEGMENT)
                .expect("root of x is inside the sieve range")
                .map(|p| {
                    let pf = p as f64;
                    pf.powi(-(k as i32)) / pf.ln()
                })
                .collect();
            compensated_sum(terms.into_iter().rev())
        } else {
            0.0
        };
        total.push(weight * (full - head));
    }
    compensated_sum(total.into_iter().rev())
}

/// Largest `r` with `r^k ≤ n`.
fn integer_root(n: u64, k: u32) -> u64 {
    if k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    let fits = |r: u64| r.checked_pow(k).is_some_and(|v| v <= n);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_segments() {
        assert_eq!(sieve_segment(2, 10).unwrap().primes(), &[2, 3, 5, 7]);
        assert!(sieve_segment(0, 2).unwrap().is_empty());
        assert_eq!(sieve_segment(0, 3).unwrap().primes(), &[2]);
        assert!(sieve_segment(5, 5).unwrap().is_empty());
        assert_eq!(sieve_segment(24, 30).unwrap().primes(), &[29]);
    }

    #[test]
    fn limit_enforced() {
        assert!(matches!(
            sieve_segment(0, DEFAULT_LIMIT + 1),
            Err(PrimeError::RangeExceedsLimit { .. })
        ));
        assert!(matches!(sieve_segment(10, 5), Err(PrimeError::InvalidRange { .. })));
        assert!(matches!(prime_stream(10, 1), Err(PrimeError::SegmentTooSmall(1))));
    }

    #[test]
    fn stream_small_limits() {
        assert_eq!(prime_stream(10, 4).unwrap().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(prime_stream(1, 16).unwrap().count(), 0);
        assert_eq!(prime_stream(2, 2).unwrap().collect::<Vec<_>>(), vec![2]);
        assert_eq!(prime_stream(0, 2).unwrap().count(), 0);
    }

    #[test]
    fn stream_from_offset() {
        let got: Vec<u64> = prime_stream_from(90, 110, 7).unwrap().collect();
        assert_eq!(got, vec![97, 101, 103, 107, 109]);
    }

    #[test]
    fn tiny_segment_sizes_tile_correctly() {
        for size in [2, 3, 5, 64, 65] {
            let got: Vec<u64> = prime_stream(500, size).unwrap().collect();
            let want: Vec<u64> = (0..=500).filter(|&n| is_prime_trial(n)).collect();
            assert_eq!(got, want, "segment size {size}");
        }
    }

    #[test]
    fn parallel_segments_in_order() {
        let segs = sieve_segments(1000, 5000, 333).unwrap();
        let flat: Vec<u64> = segs.iter().flat_map(|s| s.primes().iter().copied()).collect();
        let want: Vec<u64> = (1000..5000).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(flat, want);
        for w in segs.windows(2) {
            assert_eq!(w[0].hi(), w[1].lo());
        }
    }

    #[test]
    fn prime_powers_up_to_100() {
        let v: Vec<u64> = prime_powers(100).unwrap().iter().map(|pp| pp.value).collect();
        assert_eq!(v, vec![4, 8, 9, 16, 25, 27, 32, 49, 64, 81]);
        assert!(prime_powers(100).unwrap().iter().all(|pp| pp.p.pow(pp.k) == pp.value));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(1_000_000, 2), 1000);
        assert_eq!(integer_root(999_999, 2), 999);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
        assert_eq!(integer_root(26, 3), 2);
        assert_eq!(integer_root(27, 3), 3);
    }
}
