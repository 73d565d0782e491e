//! Exact binomial (Clopper-Pearson) confidence intervals.
//!
//! Endpoints are found by bisection on the binomial tail CDF rather than by
//! inverting the incomplete beta function; with counts in the hundreds the
//! direct tail sums are cheap and the bisection tolerance (1e-9 on the
//! proportion) is far below every downstream reporting tolerance.

use super::special::ln_factorial;
use super::Interval;
use crate::error::Error;

fn ln_choose(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// P(X <= k) for X ~ Binomial(n, p).
fn binom_cdf(k: u64, n: u64, p: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if k >= n { 1.0 } else { 0.0 };
    }
    let lp = p.ln();
    let lq = (1.0 - p).ln();
    let mut acc = 0.0;
    for x in 0..=k.min(n) {
        acc += (ln_choose(n, x) + x as f64 * lp + (n - x) as f64 * lq).exp();
    }
    acc.min(1.0)
}

const BISECT_TOL: f64 = 1e-9;

fn bisect_monotone<F: Fn(f64) -> f64>(f: F, target: f64, increasing: bool) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        let go_right = if increasing { v < target } else { v > target };
        if go_right {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact two-sided Clopper-Pearson interval for k successes out of n.
///
/// The lower endpoint is exactly 0 when k = 0 and the upper is exactly 1
/// when k = n. Requires 1 <= n and k <= n; `level` is the coverage (e.g.
/// 0.95).
pub fn clopper_pearson(k: u64, n: u64, level: f64) -> Result<Interval, Error> {
    if n == 0 {
        return Err(Error::Domain("clopper_pearson requires n >= 1".into()));
    }
    if k > n {
        return Err(Error::Domain(format!(
            "clopper_pearson requires k <= n, got k={k}, n={n}"
        )));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!(
            "confidence level must lie in (0,1), got {level}"
        )));
    }
    let half_alpha = 0.5 * (1.0 - level);

    // lower: largest p with P(X >= k; p) = half_alpha; P(X >= k) increases in p
    let lo = if k == 0 {
        0.0
    } else {
        bisect_monotone(|p| 1.0 - binom_cdf(k - 1, n, p), half_alpha, true)
    };
    // upper: p with P(X <= k; p) = half_alpha; P(X <= k) decreases in p
    let hi = if k == n {
        1.0
    } else {
        bisect_monotone(|p| binom_cdf(k, n, p), half_alpha, false)
    };
    Interval::new(lo, hi)
}
