//! Two-stage power calculus.
//!
//! A preliminary study yields a statistic `z_p = z_0 + eta` with
//! `z_0 ~ N(0,1)` and noncentrality `eta = delta * sqrt(n)`. The future
//! study's sample size is set by plugging `z_p` in for `eta` in the
//! standard formula, which makes the realized (actual) type II error of
//! the future study a random variable. This module evaluates:
//!
//! - the per-outcome conditional type II error and sample-size ratio;
//! - their expectations under the unconditional rule (always run the
//!   future study, powering from the threshold when the preliminary
//!   statistic missed it) and the conditional rule (run it only when the
//!   preliminary statistic lands in the rejection region);
//! - dense surface grids of those expectations for contour rendering;
//! - the nominal type II error that, once the two-stage inflation is
//!   accounted for, attains a desired actual error.
//!
//! For the two-sided test the conditional error and ratio are even
//! functions of `z_p` (substitute `z_p -> -z_p` and apply
//! `Phi(x) = 1 - Phi(-x)` to both terms), so integrating over both tails
//! of the rejection region is identical to applying the formulas with
//! `|z_p|`; the implementation does the latter and integrates each tail
//! separately.

use crate::error::Error;
use crate::kernels::{
    self, integrate_normal_expectation, norm_cdf, norm_sf, z_upper, Interval, Region,
};
use serde::Serialize;

/// Test sidedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    OneSided,
    TwoSided,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::OneSided => "one-sided",
            Side::TwoSided => "two-sided",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "one-sided" | "one" | "1" => Ok(Side::OneSided),
            "two-sided" | "two" | "2" => Ok(Side::TwoSided),
            other => Err(Error::Domain(format!("unknown sidedness: {other}"))),
        }
    }
}

/// Decision rule applied to the preliminary statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecisionRule {
    /// Commit to the future study regardless; power from the threshold
    /// when the statistic misses the rejection region.
    Unconditional,
    /// Run the future study only when the statistic lands in the region.
    Conditional,
}

impl std::str::FromStr for DecisionRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "unconditional" | "u" => Ok(DecisionRule::Unconditional),
            "conditional" | "c" => Ok(DecisionRule::Conditional),
            other => Err(Error::Domain(format!("unknown decision rule: {other}"))),
        }
    }
}

/// Sidedness, nominal error rates and the preliminary rejection threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoStageConfig {
    pub side: Side,
    /// Nominal type I error.
    pub alpha: f64,
    /// Nominal type II error.
    pub beta: f64,
    /// Preliminary rejection threshold: the region is `z_p >= t`
    /// (one-sided) or `|z_p| >= t` (two-sided).
    pub t: f64,
}

impl TwoStageConfig {
    pub fn new(side: Side, alpha: f64, beta: f64, t: f64) -> Result<Self, Error> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::Domain(format!("beta must lie in (0,1), got {beta}")));
        }
        if side == Side::TwoSided && t <= 0.0 {
            return Err(Error::Domain(format!(
                "two-sided preliminary threshold must be positive, got {t}"
            )));
        }
        Ok(TwoStageConfig { side, alpha, beta, t })
    }

    /// Conventional two-sided configuration: alpha 0.05, beta 0.1,
    /// threshold at the upper 2.5% point.
    pub fn default_two_sided() -> Self {
        let t = z_upper(0.025).expect("fixed quantile");
        TwoStageConfig::new(Side::TwoSided, 0.05, 0.1, t).expect("fixed configuration")
    }

    /// The rejection quantile of the future test: z_alpha (one-sided) or
    /// z_{alpha/2} (two-sided).
    pub fn z_alpha(&self) -> f64 {
        let p = match self.side {
            Side::OneSided => self.alpha,
            Side::TwoSided => 0.5 * self.alpha,
        };
        z_upper(p).expect("alpha validated on construction")
    }

    /// z_beta, the upper-beta standard normal quantile.
    pub fn z_beta(&self) -> f64 {
        z_upper(self.beta).expect("beta validated on construction")
    }

    /// The textbook planning noncentrality z_alpha + z_beta (with
    /// z_{alpha/2} in the two-sided case).
    pub fn z_sum(&self) -> f64 {
        self.z_alpha() + self.z_beta()
    }

}

/// Noncentrality and effect bookkeeping for a planned study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectSpec {
    /// Raw mean.
    pub mu: f64,
    /// Standard deviation.
    pub sigma: f64,
    /// Sample size.
    pub n: u64,
    /// Standardized effect mu/sigma.
    pub delta: f64,
    /// Noncentrality delta * sqrt(n).
    pub eta: f64,
}

impl EffectSpec {
    pub fn new(mu: f64, sigma: f64, n: u64) -> Result<Self, Error> {
        if sigma.is_nan() || sigma <= 0.0 {
            return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
        }
        if n == 0 {
            return Err(Error::Domain("sample size must be positive".into()));
        }
        let delta = mu / sigma;
        Ok(EffectSpec {
            mu,
            sigma,
            n,
            delta,
            eta: delta * (n as f64).sqrt(),
        })
    }
}

/// Type II error of a single test at the given noncentrality.
///
/// One-sided: Phi(z_alpha - ncp). Two-sided:
/// Phi(z_{alpha/2} - ncp) - Phi(-z_{alpha/2} - ncp), an even function of
/// the noncentrality sign.
pub fn type2_error(ncp: f64, cfg: &TwoStageConfig) -> f64 {
    let za = cfg.z_alpha();
    match cfg.side {
        Side::OneSided => norm_cdf(za - ncp),
        Side::TwoSided => {
            // evaluate at |ncp| so the sign symmetry is bit-exact
            let a = ncp.abs();
            norm_cdf(za - a) - norm_cdf(-za - a)
        }
    }
}

/// Noncentrality attaining nominal power 1 - beta.
///
/// The approximate form is the textbook z_alpha + z_beta (z_{alpha/2} for
/// two-sided); `exact` root-finds the type II error equation instead,
/// which differs only by the far-tail term of the two-sided error.
pub fn ncp_for_power(cfg: &TwoStageConfig, exact: bool) -> f64 {
    let approx = cfg.z_sum();
    if !exact {
        return approx;
    }
    let bracket = Interval::new(0.0, approx + 2.0).expect("valid bracket");
    kernels::find_root(|e| type2_error(e, cfg) - cfg.beta, bracket, 1e-12)
        .expect("type II error is monotone on the bracket")
}

/// Estimated future/preliminary sample-size ratio when `z_p` stands in
/// for the noncentrality: ((z_alpha + z_beta)/z_p)^2. Sign-invariant in
/// `z_p`; errors at z_p = 0 where the plug-in estimate is undefined.
pub fn sample_size_ratio_hat(z_p: f64, cfg: &TwoStageConfig) -> Result<f64, Error> {
    if z_p == 0.0 {
        return Err(Error::Domain(
            "sample-size ratio is undefined at z_p = 0".into(),
        ));
    }
    let r = cfg.z_sum() / z_p;
    Ok(r * r)
}

/// Type II error of the future study conditional on the preliminary
/// statistic `z_p`, with true noncentrality `eta`.
pub fn conditional_beta_hat(z_p: f64, eta: f64, cfg: &TwoStageConfig) -> Result<f64, Error> {
    if z_p == 0.0 {
        return Err(Error::Domain(
            "conditional type II error is undefined at z_p = 0".into(),
        ));
    }
    let za = cfg.z_alpha();
    match cfg.side {
        Side::OneSided => {
            let ncp = eta * cfg.z_sum() / z_p;
            Ok(norm_cdf(za - ncp))
        }
        Side::TwoSided => {
            let ncp = eta * cfg.z_sum() / z_p.abs();
            Ok(norm_cdf(za - ncp) - norm_cdf(-za - ncp))
        }
    }
}

/// Probability that the preliminary statistic lands in the rejection
/// region, for z_p ~ N(eta, 1).
fn region_probability(eta: f64, cfg: &TwoStageConfig) -> f64 {
    match cfg.side {
        Side::OneSided => norm_sf(cfg.t - eta),
        Side::TwoSided => norm_sf(cfg.t - eta) + norm_cdf(-cfg.t - eta),
    }
}

const MIN_CONDITIONING_PROBABILITY: f64 = 1e-12;

/// Expectation over z_p = z_0 + eta of `f(z_p)` restricted to the
/// rejection region (unnormalized).
fn region_expectation<F: Fn(f64) -> f64 + Copy>(
    eta: f64,
    cfg: &TwoStageConfig,
    f: F,
) -> Result<f64, Error> {
    let shifted = move |z0: f64| f(z0 + eta);
    let upper = Region::Interval(Interval::new(cfg.t - eta, f64::INFINITY)?);
    let mut acc = integrate_normal_expectation(shifted, upper)?;
    if cfg.side == Side::TwoSided {
        let lower = Region::Interval(Interval::new(f64::NEG_INFINITY, -cfg.t - eta)?);
        acc += integrate_normal_expectation(shifted, lower)?;
    }
    Ok(acc)
}

fn expected_over_rule<F: Fn(f64) -> f64 + Copy>(
    eta: f64,
    cfg: &TwoStageConfig,
    rule: DecisionRule,
    f: F,
    at_threshold: f64,
) -> Result<f64, Error> {
    let p_in = region_probability(eta, cfg);
    match rule {
        DecisionRule::Conditional => {
            if p_in < MIN_CONDITIONING_PROBABILITY {
                return Err(Error::Conditioning(format!(
                    "rejection-region probability {p_in:.3e} is below {MIN_CONDITIONING_PROBABILITY:.0e} \
                     at eta={eta}, t={}",
                    cfg.t
                )));
            }
            Ok(region_expectation(eta, cfg, f)? / p_in)
        }
        DecisionRule::Unconditional => {
            Ok(region_expectation(eta, cfg, f)? + at_threshold * (1.0 - p_in))
        }
    }
}

/// Actual (realized) type II error of the two-stage procedure.
pub fn expected_beta(eta: f64, cfg: &TwoStageConfig, rule: DecisionRule) -> Result<f64, Error> {
    let cfg_copy = *cfg;
    let f = move |z_p: f64| {
        conditional_beta_hat(z_p, eta, &cfg_copy).expect("z_p never 0 inside the region")
    };
    let at_t = conditional_beta_hat(cfg.t.max(f64::MIN_POSITIVE), eta, cfg)?;
    expected_over_rule(eta, cfg, rule, f, at_t)
}

/// Expected future/preliminary sample-size ratio of the procedure.
pub fn expected_ratio(eta: f64, cfg: &TwoStageConfig, rule: DecisionRule) -> Result<f64, Error> {
    let cfg_copy = *cfg;
    let f = move |z_p: f64| {
        sample_size_ratio_hat(z_p, &cfg_copy).expect("z_p never 0 inside the region")
    };
    let at_t = sample_size_ratio_hat(cfg.t.max(f64::MIN_POSITIVE), cfg)?;
    expected_over_rule(eta, cfg, rule, f, at_t)
}

/// Which expectation a surface tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SurfaceMetric {
    BetaU,
    BetaC,
    RStarU,
    RStarC,
}

impl SurfaceMetric {
    pub fn as_str(&self) -> &'static str {
        match self {
            SurfaceMetric::BetaU => "beta_u",
            SurfaceMetric::BetaC => "beta_c",
            SurfaceMetric::RStarU => "rstar_u",
            SurfaceMetric::RStarC => "rstar_c",
        }
    }

    pub fn rule(&self) -> DecisionRule {
        match self {
            SurfaceMetric::BetaU | SurfaceMetric::RStarU => DecisionRule::Unconditional,
            SurfaceMetric::BetaC | SurfaceMetric::RStarC => DecisionRule::Conditional,
        }
    }

    fn is_beta(&self) -> bool {
        matches!(self, SurfaceMetric::BetaU | SurfaceMetric::BetaC)
    }
}

impl std::str::FromStr for SurfaceMetric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "beta_u" => Ok(SurfaceMetric::BetaU),
            "beta_c" => Ok(SurfaceMetric::BetaC),
            "rstar_u" => Ok(SurfaceMetric::RStarU),
            "rstar_c" => Ok(SurfaceMetric::RStarC),
            other => Err(Error::Domain(format!("unknown surface metric: {other}"))),
        }
    }
}

/// Rectangular (eta, t) grid of one expectation, with the conventional
/// marker axes recorded alongside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSurface {
    pub eta_axis: Vec<f64>,
    pub t_axis: Vec<f64>,
    pub metric: SurfaceMetric,
    /// Row-major over eta: values[i * t_len + j] = metric(eta_i, t_j).
    pub values: Vec<f64>,
    /// Marker line t = z_{alpha/2}.
    pub marker_t: f64,
    /// Marker line eta = z_{alpha/2} + z_beta.
    pub marker_eta: f64,
}

impl PowerSurface {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.t_axis.len() + j]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn linspace(range: Interval, count: usize) -> Vec<f64> {
    let step = range.width() / (count - 1) as f64;
    (0..count).map(|i| range.lo + step * i as f64).collect()
}

/// Evaluate one metric over a dense (eta, t) grid. Every cell is exactly
/// the corresponding pointwise expectation; nothing is interpolated.
pub fn surface_grid(
    eta_range: Interval,
    t_range: Interval,
    resolution: (usize, usize),
    cfg: &TwoStageConfig,
    metric: SurfaceMetric,
) -> Result<PowerSurface, Error> {
    let (n_eta, n_t) = resolution;
    if n_eta < 2 || n_t < 2 {
        return Err(Error::Domain(
            "surface resolution must be at least 2x2".into(),
        ));
    }
    if eta_range.width() <= 0.0 || t_range.width() <= 0.0 {
        return Err(Error::Domain("surface ranges must be nondegenerate".into()));
    }
    let eta_axis = linspace(eta_range, n_eta);
    let t_axis = linspace(t_range, n_t);
    let rule = metric.rule();
    let mut values = Vec::with_capacity(n_eta * n_t);
    for &eta in &eta_axis {
        for &t in &t_axis {
            let cell_cfg = TwoStageConfig { t, ..*cfg };
            let v = if metric.is_beta() {
                expected_beta(eta, &cell_cfg, rule)?
            } else {
                expected_ratio(eta, &cell_cfg, rule)?
            };
            values.push(v);
        }
    }
    Ok(PowerSurface {
        eta_axis,
        t_axis,
        metric,
        values,
        marker_t: cfg.z_alpha(),
        marker_eta: cfg.z_sum(),
    })
}

/// Default grid extent for the surface plots.
pub fn default_surface_ranges() -> (Interval, Interval, (usize, usize)) {
    (
        Interval::new(0.5, 4.5).expect("static range"),
        Interval::new(1.0, 3.0).expect("static range"),
        (101, 101),
    )
}

/// Nominal type II error whose two-stage conditional procedure attains
/// `target_beta` at the self-consistent planning point
/// eta = z_alpha + z_beta'.
///
/// Root-found over beta' in (1e-4, target]; the residual at the returned
/// point is below 1e-6.
pub fn calibrate_nominal_beta(
    target_beta: f64,
    t: f64,
    alpha: f64,
    side: Side,
) -> Result<f64, Error> {
    if !(target_beta > 0.0 && target_beta < 1.0) {
        return Err(Error::Domain(format!(
            "target type II error must lie in (0,1), got {target_beta}"
        )));
    }
    let actual_at = |nominal: f64| -> Result<f64, Error> {
        let cfg = TwoStageConfig::new(side, alpha, nominal, t)?;
        expected_beta(cfg.z_sum(), &cfg, DecisionRule::Conditional)
    };
    let lo = 1e-4;
    let hi = target_beta;
    let f_lo = actual_at(lo)? - target_beta;
    let f_hi = actual_at(hi)? - target_beta;
    if f_lo * f_hi > 0.0 {
        return Err(Error::Calibration(format!(
            "no nominal beta in [{lo}, {hi}] attains actual beta {target_beta}"
        )));
    }
    let bracket = Interval::new(lo, hi)?;
    kernels::find_root(
        |b| actual_at(b).map(|v| v - target_beta).unwrap_or(f64::NAN),
        bracket,
        1e-9,
    )
}
