//! Seeded Monte Carlo verification of the closed-form quantities.
//!
//! Every closed-form result in [`repro`](crate::repro) and
//! [`power`](crate::power) has a direct simulation here: the
//! publication/replication decision tree for the PPV quantities, and the
//! literal two-stage procedure (draw a preliminary statistic, apply the
//! decision rule, size the future study from it, run the future study)
//! for the expectations.
//!
//! Draws come from ChaCha8 with one counter-derived stream per fixed-size
//! chunk, so results are reproducible bit-for-bit from the seed and
//! independent of any execution interleaving; normals are generated by
//! inverse-CDF so the whole pipeline shares one verified numerical path.

use crate::error::Error;
use crate::kernels::norm_quantile;
use crate::power::{sample_size_ratio_hat, DecisionRule, Side, TwoStageConfig};
use crate::repro::ReproScenario;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Number of draws and RNG seed for one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub draws: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(draws: u64, seed: u64) -> Result<Self, Error> {
        if draws == 0 {
            return Err(Error::Domain("simulation needs at least one draw".into()));
        }
        Ok(SimConfig { draws, seed })
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    /// Number of draws the estimate is based on (after conditioning).
    pub basis: u64,
}

impl Estimate {
    /// |value - reference| measured in standard errors (infinite when the
    /// standard error is zero and the values differ).
    pub fn distance_in_se(&self, reference: f64) -> f64 {
        let diff = (self.value - reference).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

fn binomial_estimate(successes: u64, trials: u64) -> Estimate {
    let n = trials as f64;
    let p = successes as f64 / n;
    Estimate {
        value: p,
        std_error: (p * (1.0 - p) / n).sqrt(),
        basis: trials,
    }
}

const CHUNK: u64 = 1 << 16;

/// Iterate draws in fixed chunks, each on its own ChaCha stream keyed by
/// the chunk index; merging in index order makes the result independent
/// of scheduling.
fn for_each_draw<F: FnMut(&mut ChaCha8Rng)>(cfg: &SimConfig, mut body: F) {
    let chunks = cfg.draws.div_ceil(CHUNK);
    for chunk in 0..chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(chunk);
        let in_chunk = CHUNK.min(cfg.draws - chunk * CHUNK);
        for _ in 0..in_chunk {
            body(&mut rng);
        }
    }
}

/// Uniform draw strictly inside (0, 1): 53 random bits at the midpoint of
/// each dyadic cell, so the inverse CDF below never sees 0 or 1.
fn uniform_open(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.gen::<u64>() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    norm_quantile(uniform_open(rng)).expect("uniform_open is strictly inside (0,1)")
}

/// One-sided test of a draw at noncentrality `ncp` and level `alpha_z`
/// (the rejection quantile, precomputed).
fn rejects_one_sided(rng: &mut ChaCha8Rng, ncp: f64, z_alpha: f64) -> bool {
    standard_normal(rng) + ncp >= z_alpha
}

/// Simulate the publication decision tree and estimate P(effect | positive).
///
/// Hypotheses are true with probability pi; true effects are tested at the
/// noncentrality z_alpha + z_beta so their rejection probability is exactly
/// 1 - beta (one-sided), null effects at 0 so it is exactly alpha.
pub fn simulate_ppv(s: &ReproScenario, cfg: &SimConfig) -> Result<Estimate, Error> {
    if s.alpha <= 0.0 || s.alpha >= 1.0 || s.beta <= 0.0 || s.beta >= 1.0 {
        return Err(Error::Domain(
            "simulation requires alpha, beta strictly inside (0,1)".into(),
        ));
    }
    let z_alpha = -norm_quantile(s.alpha)?;
    let z_beta = -norm_quantile(s.beta)?;
    let ncp_true = z_alpha + z_beta;
    let mut positives = 0u64;
    let mut true_positives = 0u64;
    for_each_draw(cfg, |rng| {
        let is_effect = uniform_open(rng) < s.pi;
        let ncp = if is_effect { ncp_true } else { 0.0 };
        if rejects_one_sided(rng, ncp, z_alpha) {
            positives += 1;
            if is_effect {
                true_positives += 1;
            }
        }
    });
    if positives == 0 {
        return Err(Error::UndefinedEstimate(
            "no positive results were drawn; PPV is undefined".into(),
        ));
    }
    Ok(binomial_estimate(true_positives, positives))
}

/// Extend [`simulate_ppv`] with an independent replication stage at
/// (alpha*, beta*) and estimate the fraction of positives that replicate.
pub fn simulate_ppv_obs(s: &ReproScenario, cfg: &SimConfig) -> Result<Estimate, Error> {
    if s.alpha <= 0.0 || s.alpha >= 1.0 || s.beta <= 0.0 || s.beta >= 1.0 {
        return Err(Error::Domain(
            "simulation requires alpha, beta strictly inside (0,1)".into(),
        ));
    }
    if s.alpha_star <= 0.0 || s.alpha_star >= 1.0 || s.beta_star <= 0.0 || s.beta_star >= 1.0 {
        return Err(Error::Domain(
            "simulation requires alpha*, beta* strictly inside (0,1)".into(),
        ));
    }
    let z_alpha = -norm_quantile(s.alpha)?;
    let z_beta = -norm_quantile(s.beta)?;
    let z_alpha_star = -norm_quantile(s.alpha_star)?;
    let z_beta_star = -norm_quantile(s.beta_star)?;
    let ncp_true = z_alpha + z_beta;
    let ncp_true_star = z_alpha_star + z_beta_star;
    let mut positives = 0u64;
    let mut replicated = 0u64;
    for_each_draw(cfg, |rng| {
        let is_effect = uniform_open(rng) < s.pi;
        let ncp = if is_effect { ncp_true } else { 0.0 };
        if rejects_one_sided(rng, ncp, z_alpha) {
            positives += 1;
            let ncp_star = if is_effect { ncp_true_star } else { 0.0 };
            if rejects_one_sided(rng, ncp_star, z_alpha_star) {
                replicated += 1;
            }
        }
    });
    if positives == 0 {
        return Err(Error::UndefinedEstimate(
            "no positive results were drawn; observed reproducibility is undefined".into(),
        ));
    }
    Ok(binomial_estimate(replicated, positives))
}

/// Estimates of the actual type II error and expected sample-size ratio of
/// one two-stage configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoStageSim {
    pub beta: Estimate,
    pub ratio: Estimate,
}

/// Simulate the literal two-stage procedure at true noncentrality `eta`.
///
/// Each draw forms z_p = z_0 + eta, applies the decision rule, powers the
/// future study from z_p (or from the threshold under the unconditional
/// rule when z_p misses the region), runs the future study at the
/// rescaled noncentrality and records its outcome.
pub fn simulate_two_stage(
    eta: f64,
    ts: &TwoStageConfig,
    rule: DecisionRule,
    cfg: &SimConfig,
) -> Result<TwoStageSim, Error> {
    let z_alpha = ts.z_alpha();
    let in_region = |z_p: f64| match ts.side {
        Side::OneSided => z_p >= ts.t,
        Side::TwoSided => z_p.abs() >= ts.t,
    };
    let rejects_future = |rng: &mut ChaCha8Rng, ncp: f64| -> bool {
        let z_future = standard_normal(rng) + ncp;
        match ts.side {
            Side::OneSided => z_future >= z_alpha,
            Side::TwoSided => z_future.abs() >= z_alpha,
        }
    };
    let ratio_at_threshold = sample_size_ratio_hat(ts.t.max(f64::MIN_POSITIVE), ts)?;

    let mut undertaken = 0u64;
    let mut rejected = 0u64;
    let mut ratio_sum = 0.0;
    let mut ratio_sq_sum = 0.0;
    for_each_draw(cfg, |rng| {
        let z_p = standard_normal(rng) + eta;
        let accepted = in_region(z_p);
        let ratio = if accepted {
            sample_size_ratio_hat(z_p, ts).expect("z_p inside the region is nonzero")
        } else {
            match rule {
                DecisionRule::Conditional => return,
                DecisionRule::Unconditional => ratio_at_threshold,
            }
        };
        undertaken += 1;
        ratio_sum += ratio;
        ratio_sq_sum += ratio * ratio;
        let ncp_future = eta * ratio.sqrt();
        if rejects_future(rng, ncp_future) {
            rejected += 1;
        }
    });
    if undertaken == 0 {
        return Err(Error::UndefinedEstimate(
            "no draws entered the rejection region; conditional estimates undefined".into(),
        ));
    }
    let n = undertaken as f64;
    let beta = binomial_estimate(undertaken - rejected, undertaken);
    let ratio_mean = ratio_sum / n;
    let ratio_var = (ratio_sq_sum / n - ratio_mean * ratio_mean).max(0.0);
    Ok(TwoStageSim {
        beta,
        ratio: Estimate {
            value: ratio_mean,
            std_error: (ratio_var / n).sqrt(),
            basis: undertaken,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::{expected_beta, expected_ratio};
    use crate::repro::{ppv_from_prevalence, ppv_obs_from_ppv};

    fn scenario(pi: f64) -> ReproScenario {
        ReproScenario::with_default_rates(pi).unwrap()
    }

    #[test]
    fn ppv_matches_closed_form_at_equipoise() {
        let cfg = SimConfig::new(200_000, 42).unwrap();
        let est = simulate_ppv(&scenario(0.5), &cfg).unwrap();
        let exact = ppv_from_prevalence(&scenario(0.5));
        assert!(
            est.distance_in_se(exact) < 3.0,
            "{} vs {exact} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn ppv_degenerate_prevalences() {
        let cfg = SimConfig::new(50_000, 7).unwrap();
        let est = simulate_ppv(&scenario(1.0), &cfg).unwrap();
        assert_eq!(est.value, 1.0);
        // pi = 0: every positive is false, or no positives at all
        match simulate_ppv(&scenario(0.0), &SimConfig::new(100, 7).unwrap()) {
            Ok(est) => assert_eq!(est.value, 0.0),
            Err(Error::UndefinedEstimate(_)) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn ppv_obs_matches_closed_form() {
        let cfg = SimConfig::new(200_000, 99).unwrap();
        for pi in [1.0, 0.25] {
            let s = scenario(pi);
            let est = simulate_ppv_obs(&s, &cfg).unwrap();
            let exact = ppv_obs_from_ppv(ppv_from_prevalence(&s), s.alpha_star, s.beta_star);
            assert!(
                est.distance_in_se(exact) < 3.0,
                "pi={pi}: {} vs {exact}",
                est.value
            );
        }
    }

    #[test]
    fn determinism_bit_for_bit() {
        let cfg = SimConfig::new(65_537, 2024).unwrap(); // straddles a chunk boundary
        let s = scenario(0.25);
        let a = simulate_ppv_obs(&s, &cfg).unwrap();
        let b = simulate_ppv_obs(&s, &cfg).unwrap();
        assert_eq!(a, b);
        let ts = TwoStageConfig::default_two_sided();
        let x = simulate_two_stage(1.5, &ts, DecisionRule::Conditional, &cfg).unwrap();
        let y = simulate_two_stage(1.5, &ts, DecisionRule::Conditional, &cfg).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn two_stage_matches_quadrature() {
        let cfg = SimConfig::new(300_000, 5).unwrap();
        let default_t = TwoStageConfig::default_two_sided().t;
        // spread of (eta, t) pairs, including the zero-effect case where
        // both routes give exactly 1 - alpha
        for (eta, t, rule) in [
            (1.0, default_t, DecisionRule::Conditional),
            (1.96, default_t, DecisionRule::Conditional),
            (4.0, default_t, DecisionRule::Conditional),
            (0.0, default_t, DecisionRule::Conditional),
            (1.0, default_t, DecisionRule::Unconditional),
            (2.729, 1.578, DecisionRule::Conditional),
            (2.623, 2.221, DecisionRule::Unconditional),
        ] {
            let ts = TwoStageConfig::new(Side::TwoSided, 0.05, 0.1, t).unwrap();
            let sim = simulate_two_stage(eta, &ts, rule, &cfg).unwrap();
            let beta_exact = expected_beta(eta, &ts, rule).unwrap();
            let ratio_exact = expected_ratio(eta, &ts, rule).unwrap();
            assert!(
                sim.beta.distance_in_se(beta_exact) < 3.5,
                "beta eta={eta}: {} vs {beta_exact} ({} se)",
                sim.beta.value,
                sim.beta.distance_in_se(beta_exact)
            );
            assert!(
                sim.ratio.distance_in_se(ratio_exact) < 3.5,
                "ratio eta={eta}: {} vs {ratio_exact} ({} se)",
                sim.ratio.value,
                sim.ratio.distance_in_se(ratio_exact)
            );
        }
    }

    #[test]
    fn near_zero_threshold_unconditional_matches_quadrature() {
        // t -> 0 makes the region everything; the unconditional and
        // conditional expectations coincide there
        let ts = TwoStageConfig::new(Side::TwoSided, 0.05, 0.1, 1e-9).unwrap();
        let cfg = SimConfig::new(200_000, 11).unwrap();
        let sim = simulate_two_stage(2.0, &ts, DecisionRule::Unconditional, &cfg).unwrap();
        let exact = expected_beta(2.0, &ts, DecisionRule::Unconditional).unwrap();
        assert!(sim.beta.distance_in_se(exact) < 3.5);
    }

    #[test]
    fn standard_errors_shrink_like_sqrt_draws() {
        let s = scenario(0.5);
        let small = simulate_ppv(&s, &SimConfig::new(10_000, 3).unwrap()).unwrap();
        let large = simulate_ppv(&s, &SimConfig::new(1_000_000, 3).unwrap()).unwrap();
        let factor = small.std_error / large.std_error;
        assert!(
            (8.0..=12.0).contains(&factor),
            "se ratio {factor} outside [8, 12]"
        );
    }

    #[test]
    fn conditional_with_unreachable_region_is_flagged() {
        let ts = TwoStageConfig::new(Side::TwoSided, 0.05, 0.1, 9.0).unwrap();
        let cfg = SimConfig::new(10_000, 1).unwrap();
        let r = simulate_two_stage(0.0, &ts, DecisionRule::Conditional, &cfg);
        assert!(matches!(r, Err(Error::UndefinedEstimate(_))));
    }

    #[test]
    fn zero_draws_rejected() {
        assert!(SimConfig::new(0, 1).is_err());
    }
}
