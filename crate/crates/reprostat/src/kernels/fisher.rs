//! Fisher's exact test for 2x2 tables.

use super::special::ln_factorial;
use crate::error::Error;

/// 2x2 contingency table of non-negative counts, laid out as
/// `(a, b; c, d)` with rows as groups and columns as outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table2x2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Table2x2 {
    /// Build a table; the total count must be positive.
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self, Error> {
        if a + b + c + d == 0 {
            return Err(Error::Domain("2x2 table must have a positive total".into()));
        }
        Ok(Table2x2 { a, b, c, d })
    }
}

/// ln P(X = x) for the hypergeometric law with fixed margins.
fn ln_hyper(x: u64, row1: u64, col1: u64, n: u64) -> f64 {
    // the d-cell count; (n + x) first keeps the u64 arithmetic non-negative
    let d_cell = n + x - row1 - col1;
    ln_factorial(row1) + ln_factorial(n - row1) + ln_factorial(col1) + ln_factorial(n - col1)
        - ln_factorial(n)
        - ln_factorial(x)
        - ln_factorial(row1 - x)
        - ln_factorial(col1 - x)
        - ln_factorial(d_cell)
}

/// Two-sided Fisher exact P-value.
///
/// Uses the standard convention: the sum over all tables (with the observed
/// margins) whose probability does not exceed the observed table's, with a
/// 1e-7 relative slack to absorb floating-point ties. A table with a zero
/// row or column margin carries no information and returns 1.
pub fn fisher_exact_2x2(t: &Table2x2) -> f64 {
    let row1 = t.a + t.b;
    let col1 = t.a + t.c;
    let n = t.a + t.b + t.c + t.d;
    if row1 == 0 || col1 == 0 || row1 == n || col1 == n {
        return 1.0;
    }
    let lo = col1.saturating_sub(n - row1);
    let hi = row1.min(col1);
    let lp_obs = ln_hyper(t.a, row1, col1, n);
    let p_obs = lp_obs.exp();
    let cutoff = p_obs * (1.0 + 1e-7);
    let mut total = 0.0;
    for x in lo..=hi {
        let p = ln_hyper(x, row1, col1, n).exp();
        if p <= cutoff {
            total += p;
        }
    }
    total.min(1.0)
}
