//! Wilcoxon rank-sum (Mann-Whitney) test.

use super::normal::norm_sf;
use crate::error::Error;

/// Two-sided Wilcoxon rank-sum P-value via the normal approximation with
/// mid-ranks for ties, tie-corrected variance and a 0.5 continuity
/// correction.
///
/// Returns 1 when every value in both samples is identical (no ordering
/// information); errors when either sample is empty.
pub fn wilcoxon_rank_sum(xs: &[f64], ys: &[f64]) -> Result<f64, Error> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Domain(
            "wilcoxon_rank_sum requires two non-empty samples".into(),
        ));
    }
    if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "wilcoxon_rank_sum requires finite sample values".into(),
        ));
    }

    let n1 = xs.len() as f64;
    let n2 = ys.len() as f64;
    let n = n1 + n2;

    // rank the pooled sample with mid-ranks for ties
    let mut pooled: Vec<(f64, usize)> = xs
        .iter()
        .map(|&v| (v, 0usize))
        .chain(ys.iter().map(|&v| (v, 1usize)))
        .collect();
    pooled.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut rank_sum_x = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        let mid_rank = (i + j) as f64 / 2.0 + 1.0;
        for item in &pooled[i..=j] {
            if item.1 == 0 {
                rank_sum_x += mid_rank;
            }
        }
        tie_term += t * t * t - t;
        i = j + 1;
    }

    let mean = n1 * (n + 1.0) / 2.0;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        // all values tied across both samples
        return Ok(1.0);
    }
    let diff = (rank_sum_x - mean).abs() - 0.5;
    let z = diff.max(0.0) / var.sqrt();
    Ok((2.0 * norm_sf(z)).min(1.0))
}
