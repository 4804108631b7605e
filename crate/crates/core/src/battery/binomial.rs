//! Exact two-sided binomial test.
//!
//! The two-sided p-value uses the minimum-likelihood convention: it sums
//! `P(K = k)` over every outcome `k` whose probability does not exceed that
//! of the observed count. As in the widely used SciPy implementation,
//! "does not exceed" allows a relative slack of `1e-7` so that outcomes
//! with mathematically equal probability are grouped despite rounding.

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational};
use statrs::function::gamma::ln_gamma;

/// Relative slack when comparing point probabilities.
pub const RELATIVE_SLACK: f64 = 1e-7;

struct LogPmf {
    trials: u64,
    ln_p: f64,
    ln_q: f64,
    ln_n_fact: f64,
}

impl LogPmf {
    fn new(trials: u64, p: f64) -> Self {
        LogPmf { trials, ln_p: p.ln(), ln_q: (-p).ln_1p(), ln_n_fact: ln_gamma(trials as f64 + 1.0) }
    }

    fn at(&self, k: u64) -> f64 {
        let n = self.trials;
        self.ln_n_fact - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
            + k as f64 * self.ln_p
            + (n - k) as f64 * self.ln_q
    }
}

/// Two-sided exact binomial p-value of `successes` out of `trials` under
/// success probability `p0`.
pub fn exact_binomial_test(successes: u64, trials: u64, p0: &Rational) -> Result<f64> {
    binomial_test_f64(successes, trials, rational_to_f64(p0))
}

/// [`exact_binomial_test`] for a floating-point `p0`.
pub fn binomial_test_f64(successes: u64, trials: u64, p0: f64) -> Result<f64> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::domain(format!("success probability must lie in (0, 1), got {p0}")));
    }
    if successes > trials {
        return Err(Error::domain(format!("successes {successes} exceed trials {trials}")));
    }
    if trials == 0 {
        return Ok(1.0);
    }
    let lp = LogPmf::new(trials, p0);
    let observed = lp.at(successes);
    let threshold = observed + RELATIVE_SLACK.ln_1p();
    let qualifies = |k: u64| lp.at(k) <= threshold;

    // The pmf is nondecreasing on [0, mode] and nonincreasing on [mode, n],
    // so the qualifying outcomes form a prefix of the first range and a
    // suffix of the second.
    let mode = (((trials + 1) as f64 * p0).floor() as u64).min(trials);

    // Largest k in [0, mode] that qualifies, if any.
    let lower_end = if qualifies(0) {
        let (mut lo, mut hi) = (0, mode);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if qualifies(mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Some(lo)
    } else {
        None
    };
    // Smallest k in (mode, n] that qualifies, if any.
    let upper_start = if mode < trials && qualifies(trials) {
        let (mut lo, mut hi) = (mode + 1, trials);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if qualifies(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    } else {
        None
    };

    // Every outcome qualifies: the p-value is the total mass.
    let lower_covers = lower_end == Some(mode);
    let upper_covers = mode == trials || upper_start == Some(mode + 1);
    if lower_covers && upper_covers {
        return Ok(1.0);
    }

    // Sum relative to the observed probability, walking away from the mode
    // until terms stop contributing.
    let mut scaled = 0.0;
    if let Some(end) = lower_end {
        scaled += tail_sum(&lp, observed, (0..=end).rev());
    }
    if let Some(start) = upper_start {
        scaled += tail_sum(&lp, observed, start..=trials);
    }
    Ok((scaled * observed.exp()).min(1.0))
}

fn tail_sum(lp: &LogPmf, observed: f64, ks: impl Iterator<Item = u64>) -> f64 {
    let mut sum = 0.0;
    for k in ks {
        let term = (lp.at(k) - observed).exp();
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    sum
}
