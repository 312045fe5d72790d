use super::sum::CompensatedSum;
use super::{AnalysisError, EULER_GAMMA};

/// Switch from the convergent power series to the asymptotic expansion.
const SERIES_LIMIT: f64 = 40.0;

/// Exponential integral `Ei(t)` for `t > 0`.
fn ei_positive(t: f64) -> f64 {
    if t <= SERIES_LIMIT {
        // Ei(t) = γ + ln t + Σ_{k≥1} t^k / (k·k!), all terms positive
        let mut sum = CompensatedSum::new();
        let mut pow_over_fact = 1.0;
        let mut k = 1u32;
        loop {
            let kf = k as f64;
            pow_over_fact *= t / kf;
            let term = pow_over_fact / kf;
            sum.add(term);
            if term <= 1e-17 * sum.primary() {
                break;
            }
            k += 1;
        }
        sum.add(t.ln());
        sum.add(EULER_GAMMA);
        sum.value()
    } else {
        // Ei(t) ~ e^t/t · Σ k!/t^k, truncated before the smallest term
        let mut sum = CompensatedSum::new();
        let mut term = 1.0;
        let mut k = 0u32;
        loop {
            sum.add(term);
            k += 1;
            let next = term * k as f64 / t;
            if next >= term || next < 1e-17 {
                break;
            }
            term = next;
        }
        sum.value() * t.exp() / t
    }
}

/// Logarithmic integral `li(x) = ∫_0^x dt / log t` (principal value), `x > 1`.
///
/// Evaluated as `Ei(log x)`.
pub fn li(x: f64) -> Result<f64, AnalysisError> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(AnalysisError::Domain { function: "li", arg: x });
    }
    Ok(ei_positive(x.ln()))
}
