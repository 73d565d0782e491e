//! Reproducibility algebra: positive predictive value from effect
//! prevalence and error rates, the observed replication rate it implies,
//! and the inversion recovering PPV from an observed rate.
//!
//! Odds are used only transiently inside the prevalence formula; every
//! public value is a probability, with the prevalence limits 0 and 1
//! handled explicitly so no infinities escape.

use crate::error::Error;
use serde::Serialize;

/// Prevalence plus original and replication error rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReproScenario {
    /// Effect prevalence: proportion of tested hypotheses that are true.
    pub pi: f64,
    /// Original-study type I error.
    pub alpha: f64,
    /// Original-study type II error.
    pub beta: f64,
    /// Replication type I error.
    pub alpha_star: f64,
    /// Replication type II error.
    pub beta_star: f64,
}

impl ReproScenario {
    pub fn new(
        pi: f64,
        alpha: f64,
        beta: f64,
        alpha_star: f64,
        beta_star: f64,
    ) -> Result<Self, Error> {
        for (name, v) in [
            ("pi", pi),
            ("alpha", alpha),
            ("beta", beta),
            ("alpha_star", alpha_star),
            ("beta_star", beta_star),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name} must lie in [0,1], got {v}")));
            }
        }
        Ok(ReproScenario {
            pi,
            alpha,
            beta,
            alpha_star,
            beta_star,
        })
    }

    /// Scenario with the conventional rates alpha = alpha* = 0.05 and
    /// beta = beta* = 0.1 at the given prevalence.
    pub fn with_default_rates(pi: f64) -> Result<Self, Error> {
        ReproScenario::new(pi, 0.05, 0.1, 0.05, 0.1)
    }
}

/// Predicted PPV and observed replication rate for one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReproPrediction {
    pub pi: f64,
    pub ppv: f64,
    pub ppv_obs: f64,
}

/// A PPV recovered by inverting the observed rate; `clamped` records that
/// the raw algebraic value fell outside [0,1] (possible for noisy
/// empirical rates) and was clipped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PpvEstimate {
    pub value: f64,
    pub clamped: bool,
}

/// The factor (1 - beta)/alpha by which a positive result multiplies the
/// prior odds.
pub fn odds_multiplier(alpha: f64, beta: f64) -> f64 {
    debug_assert!(alpha > 0.0, "odds multiplier needs alpha > 0");
    (1.0 - beta) / alpha
}

/// PPV as a function of prevalence: Odds(PPV) = ((1-beta)/alpha) Odds(pi).
///
/// Limits: pi = 1 gives 1, pi = 0 gives 0, and alpha = 0 with pi > 0 gives
/// 1 (a positive test cannot be a false positive).
pub fn ppv_from_prevalence(s: &ReproScenario) -> f64 {
    if s.pi >= 1.0 {
        return 1.0;
    }
    if s.pi <= 0.0 {
        return 0.0;
    }
    if s.alpha == 0.0 {
        return 1.0;
    }
    let odds = odds_multiplier(s.alpha, s.beta) * s.pi / (1.0 - s.pi);
    odds / (1.0 + odds)
}

/// Observed replication rate implied by a PPV under a replication protocol
/// with errors (alpha*, beta*): a convex combination of 1-beta* and alpha*.
pub fn ppv_obs_from_ppv(ppv: f64, alpha_star: f64, beta_star: f64) -> f64 {
    ppv * (1.0 - beta_star) + (1.0 - ppv) * alpha_star
}

/// Invert the observed replication rate back to a PPV.
///
/// Requires alpha* + beta* < 1; empirical rates can land outside [0,1]
/// after inversion, in which case the value is clamped and flagged.
pub fn ppv_from_ppv_obs(
    ppv_obs: f64,
    alpha_star: f64,
    beta_star: f64,
) -> Result<PpvEstimate, Error> {
    let denom = 1.0 - alpha_star - beta_star;
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "inversion requires alpha* + beta* < 1, got {}",
            alpha_star + beta_star
        )));
    }
    let raw = (ppv_obs - alpha_star) / denom;
    let value = raw.clamp(0.0, 1.0);
    Ok(PpvEstimate {
        value,
        clamped: value != raw,
    })
}

/// One prediction row per scenario.
pub fn scenario_table(scenarios: &[ReproScenario]) -> Vec<ReproPrediction> {
    scenarios
        .iter()
        .map(|s| {
            let ppv = ppv_from_prevalence(s);
            ReproPrediction {
                pi: s.pi,
                ppv,
                ppv_obs: ppv_obs_from_ppv(ppv, s.alpha_star, s.beta_star),
            }
        })
        .collect()
}
