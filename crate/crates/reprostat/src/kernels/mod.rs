//! Deterministic numerical primitives.
//!
//! Standard-normal density/CDF/quantile with a numerically stable log tail,
//! adaptive Gauss-Kronrod quadrature of expectations under the standard
//! normal, Brent root finding, exact binomial (Clopper-Pearson) intervals,
//! Fisher's exact test and the Wilcoxon rank-sum test.
//!
//! Everything here is a pure function of its arguments; no shared state.

mod binomial;
mod fisher;
mod normal;
mod quad;
mod roots;
mod special;
mod wilcoxon;

pub use binomial::clopper_pearson;
pub use fisher::{fisher_exact_2x2, Table2x2};
pub use normal::{norm_cdf, norm_log_pdf, norm_log_sf, norm_pdf, norm_quantile, norm_sf, z_upper};
pub use quad::{integrate_normal_expectation, Region};
pub use roots::{bisect, find_root};
pub use special::{erf, erfc, erfcx, ln_gamma};
pub use wilcoxon::wilcoxon_rank_sum;

use crate::error::Error;

/// Closed interval with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Build an interval, rejecting NaN and inverted endpoints.
    /// Infinite endpoints are allowed; quadrature truncates them explicitly.
    pub fn new(lo: f64, hi: f64) -> Result<Self, Error> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::Domain("interval endpoint is NaN".into()));
        }
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval endpoints out of order: lo={lo} > hi={hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Width `hi - lo`.
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// True when `x` lies in `[lo, hi]`.
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_inverted_endpoints() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 0.0).is_err());
        let iv = Interval::new(-1.0, 2.5).unwrap();
        assert_eq!(iv.width(), 3.5);
        assert!(iv.contains(0.0));
        assert!(!iv.contains(3.0));
    }
}
