//! Replication-dataset reanalysis pipeline.
//!
//! From a table of original/replication study pairs: filter to the usable
//! subset, impute each original statistic from its two-sided P-value,
//! estimate the per-study noncentrality with the floored truncated MLE,
//! evaluate each study's actual type II error under the conditional
//! two-stage rule, and aggregate into the observed reproducibility rate,
//! its exact interval, predicted rates under prevalence scenarios, the
//! effect-type breakdown and the accompanying significance tests.
//!
//! The heterogeneous tests in these datasets are treated uniformly as
//! two-sided normal tests; that working assumption is recorded in the
//! summary's `assumptions` block.

use crate::error::Error;
use crate::ingest::{EffectType, StudyRecord};
use crate::kernels::{clopper_pearson, fisher_exact_2x2, wilcoxon_rank_sum, z_upper, Table2x2};
use crate::mle::{mle_eta_floored, TruncatedObservation};
use crate::power::{expected_beta, DecisionRule, Side, TwoStageConfig};
use crate::repro::{ppv_from_prevalence, ppv_obs_from_ppv, ReproScenario};
use serde::Serialize;

/// Fixed configuration of one reanalysis run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineConfig {
    /// Truncation threshold for the imputed statistics.
    pub t: f64,
    /// Nominal type I error of the replication test.
    pub alpha: f64,
    /// Replication type I error used in the predictions.
    pub alpha_star: f64,
    /// Lower bound imposed on original P-values.
    pub p_floor: f64,
    /// Prevalence scenarios to predict observed reproducibility for.
    pub scenario_pis: Vec<f64>,
}

impl PipelineConfig {
    /// Conventional configuration: t = z_{0.025}, alpha = alpha* = 0.05,
    /// P-value floor 1e-6, prevalences {1, 0.5, 0.25, 0.05}.
    pub fn osc_default() -> Self {
        PipelineConfig {
            t: z_upper(0.025).expect("fixed quantile"),
            alpha: 0.05,
            alpha_star: 0.05,
            p_floor: 1e-6,
            scenario_pis: vec![1.0, 0.5, 0.25, 0.05],
        }
    }

    /// Economics-table configuration: the threshold widens to z_{0.05}
    /// (one study there defined significance as P <= 0.1) while the
    /// nominal type I error stays 0.05.
    pub fn eco_default() -> Self {
        PipelineConfig {
            t: z_upper(0.05).expect("fixed quantile"),
            ..PipelineConfig::osc_default()
        }
    }
}

/// Record counts surviving each filter stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    /// Rows in the input table.
    pub loaded: usize,
    /// Both significance indicators present.
    pub complete: usize,
    /// Original study significant.
    pub significant: usize,
    /// P-value also present.
    pub with_pvalue: usize,
    /// Replication power also present (the type-II-error basis).
    pub usable: usize,
}

/// Output of the eligibility filter.
#[derive(Debug, Clone)]
pub struct FilterResult {
    /// Complete and originally-significant records: the observed-rate basis.
    pub significant: Vec<StudyRecord>,
    pub counts: StageCounts,
}

/// Apply the completeness rule (both significance indicators present)
/// and then keep originally-significant records, counting each stage.
pub fn filter_eligible(records: &[StudyRecord]) -> FilterResult {
    let complete: Vec<&StudyRecord> = records
        .iter()
        .filter(|r| r.sig_original.is_some() && r.sig_replication.is_some())
        .collect();
    let significant: Vec<StudyRecord> = complete
        .iter()
        .filter(|r| r.sig_original == Some(true))
        .map(|r| (*r).clone())
        .collect();
    let with_pvalue = significant.iter().filter(|r| r.p_original.is_some()).count();
    let usable = significant
        .iter()
        .filter(|r| r.p_original.is_some() && r.replication_power.is_some())
        .count();
    let counts = StageCounts {
        loaded: records.len(),
        complete: complete.len(),
        significant: significant.len(),
        with_pvalue,
        usable,
    };
    FilterResult { significant, counts }
}

/// Statistic imputed from a two-sided P-value: z = Phi^-1(1 - p/2) after
/// flooring. `floored` records that the floor (or a nonpositive input)
/// was applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImputedZ {
    pub p_floored: f64,
    pub z_p: f64,
    pub floored: bool,
}

/// Impute the original statistic from its two-sided P-value, flooring at
/// `p_floor` (nonpositive P-values count as floored).
pub fn impute_zp(p: f64, p_floor: f64) -> Result<ImputedZ, Error> {
    if !(p_floor > 0.0 && p_floor < 1.0) {
        return Err(Error::Domain(format!(
            "P-value floor must lie in (0,1), got {p_floor}"
        )));
    }
    if p > 1.0 {
        return Err(Error::Domain(format!("P-value above 1: {p}")));
    }
    let (p_floored, floored) = if p < p_floor { (p_floor, true) } else { (p, false) };
    let z_p = -crate::kernels::norm_quantile(p_floored / 2.0)?;
    Ok(ImputedZ { p_floored, z_p, floored })
}

/// One study carried through the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImputedStudy {
    pub id: String,
    pub p_original: f64,
    pub p_floored: f64,
    pub z_p: f64,
    /// Floored truncated-MLE noncentrality.
    pub eta_hat: f64,
    /// 1 - replication power.
    pub beta_nominal: f64,
    /// Conditional-rule actual type II error at eta_hat.
    pub beta_actual: f64,
}

/// Actual type II error of one study: the conditional-rule expectation at
/// the study's estimated noncentrality, with the study's own nominal
/// error.
pub fn study_actual_beta(
    eta_hat: f64,
    beta_nominal: f64,
    t: f64,
    alpha: f64,
) -> Result<f64, Error> {
    let cfg = TwoStageConfig::new(Side::TwoSided, alpha, beta_nominal, t)?;
    expected_beta(eta_hat, &cfg, DecisionRule::Conditional)
}

fn compute_study(
    rec: &StudyRecord,
    cfg: &PipelineConfig,
    warnings: &mut Vec<String>,
) -> Result<Option<ImputedStudy>, Error> {
    let (Some(p), Some(power)) = (rec.p_original, rec.replication_power) else {
        return Ok(None);
    };
    if !(power > 0.0 && power < 1.0) {
        warnings.push(format!(
            "study {}: replication power {power} outside (0,1); skipped",
            rec.id
        ));
        return Ok(None);
    }
    let imputed = impute_zp(p, cfg.p_floor)?;
    // a rounded P-value can land a nominally significant study a hair
    // below the threshold; treat it as sitting on the threshold
    let z_p = if imputed.z_p < cfg.t {
        warnings.push(format!(
            "study {}: imputed z_p {:.4} below threshold {:.4}; clamped",
            rec.id, imputed.z_p, cfg.t
        ));
        cfg.t
    } else {
        imputed.z_p
    };
    let obs = TruncatedObservation::new(z_p, cfg.t)?;
    let eta_hat = mle_eta_floored(&obs, 0.0).value;
    let beta_nominal = 1.0 - power;
    let beta_actual = study_actual_beta(eta_hat, beta_nominal, cfg.t, cfg.alpha)?;
    Ok(Some(ImputedStudy {
        id: rec.id.clone(),
        p_original: p,
        p_floored: imputed.p_floored,
        z_p,
        eta_hat,
        beta_nominal,
        beta_actual,
    }))
}

/// Reproducibility predicted for one prevalence scenario using the
/// estimated mean actual type II error as beta*.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictionRow {
    pub pi: f64,
    pub ppv: f64,
    pub predicted_ppv_obs: f64,
}

/// Observed reproduction rate for one effect type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectTypeRow {
    pub effect_type: String,
    pub reproduced: u64,
    pub total: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Pipeline assumptions recorded alongside every summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assumptions {
    /// Every study is treated as a two-sided normal test.
    pub test_model: String,
    pub t: f64,
    pub alpha: f64,
    pub alpha_star: f64,
    pub p_floor: f64,
}

/// Aggregated reanalysis results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReanalysisSummary {
    pub n_total: u64,
    pub n_used: u64,
    pub mean_beta_actual: f64,
    pub observed: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub predictions: Vec<PredictionRow>,
    pub effect_types: Vec<EffectTypeRow>,
    pub fisher_p: Option<f64>,
    pub wilcoxon_p: Option<f64>,
    pub observed_successes: u64,
    pub observed_trials: u64,
    pub stage_counts: StageCounts,
    pub n_floored: u64,
    pub assumptions: Assumptions,
    pub warnings: Vec<String>,
}

/// Summary plus the per-study computations behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReanalysisReport {
    pub summary: ReanalysisSummary,
    pub studies: Vec<ImputedStudy>,
}

fn predictions_for(cfg: &PipelineConfig, mean_beta: f64) -> Result<Vec<PredictionRow>, Error> {
    cfg.scenario_pis
        .iter()
        .map(|&pi| {
            let scenario = ReproScenario::with_default_rates(pi)?;
            let ppv = ppv_from_prevalence(&scenario);
            Ok(PredictionRow {
                pi,
                ppv,
                predicted_ppv_obs: ppv_obs_from_ppv(ppv, cfg.alpha_star, mean_beta),
            })
        })
        .collect()
}

fn effect_type_breakdown(records: &[StudyRecord]) -> Result<Vec<EffectTypeRow>, Error> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<EffectType, (u64, u64)> = BTreeMap::new();
    for r in records {
        let Some(et) = r.effect_type else { continue };
        let entry = groups.entry(et).or_insert((0, 0));
        entry.1 += 1;
        if r.sig_replication == Some(true) {
            entry.0 += 1;
        }
    }
    groups
        .into_iter()
        .map(|(et, (reproduced, total))| {
            let iv = clopper_pearson(reproduced, total, 0.95)?;
            Ok(EffectTypeRow {
                effect_type: et.as_str().to_string(),
                reproduced,
                total,
                rate: reproduced as f64 / total as f64,
                ci_low: iv.lo,
                ci_high: iv.hi,
            })
        })
        .collect()
}

fn fisher_main_vs_interaction(rows: &[EffectTypeRow]) -> Option<f64> {
    let find = |name: &str| rows.iter().find(|r| r.effect_type == name);
    let main = find("main effect")?;
    let inter = find("interaction")?;
    let table = Table2x2::new(
        main.reproduced,
        main.total - main.reproduced,
        inter.reproduced,
        inter.total - inter.reproduced,
    )
    .ok()?;
    Some(fisher_exact_2x2(&table))
}

/// Wilcoxon rank-sum on the imputed statistics split by replication
/// outcome, over significant records with a P-value.
fn wilcoxon_by_outcome(
    records: &[StudyRecord],
    cfg: &PipelineConfig,
) -> Result<Option<f64>, Error> {
    let mut replicated = Vec::new();
    let mut failed = Vec::new();
    for r in records {
        let Some(p) = r.p_original else { continue };
        let z = impute_zp(p, cfg.p_floor)?.z_p;
        match r.sig_replication {
            Some(true) => replicated.push(z),
            Some(false) => failed.push(z),
            None => {}
        }
    }
    if replicated.is_empty() || failed.is_empty() {
        return Ok(None);
    }
    wilcoxon_rank_sum(&replicated, &failed).map(Some)
}

fn summarize_filtered(
    observed_basis: &[StudyRecord],
    counts: StageCounts,
    cfg: &PipelineConfig,
    mut warnings: Vec<String>,
) -> Result<ReanalysisReport, Error> {
    // fixed sorted-id order makes the aggregation independent of input order
    let mut basis: Vec<&StudyRecord> = observed_basis.iter().collect();
    basis.sort_by(|a, b| a.id.cmp(&b.id));

    let mut studies = Vec::new();
    for rec in &basis {
        if let Some(s) = compute_study(rec, cfg, &mut warnings)? {
            studies.push(s);
        }
    }
    if studies.is_empty() {
        return Err(Error::Domain(
            "no studies with both P-value and replication power".into(),
        ));
    }
    let mean_beta_actual =
        studies.iter().map(|s| s.beta_actual).sum::<f64>() / studies.len() as f64;
    let n_floored = studies.iter().filter(|s| s.p_floored > s.p_original).count() as u64;

    let successes = basis
        .iter()
        .filter(|r| r.sig_replication == Some(true))
        .count() as u64;
    let trials = basis.len() as u64;
    let iv = clopper_pearson(successes, trials, 0.95)?;

    let effect_types = effect_type_breakdown(observed_basis)?;
    let fisher_p = fisher_main_vs_interaction(&effect_types);
    let wilcoxon_p = wilcoxon_by_outcome(observed_basis, cfg)?;

    let summary = ReanalysisSummary {
        n_total: counts.loaded as u64,
        n_used: studies.len() as u64,
        mean_beta_actual,
        observed: successes as f64 / trials as f64,
        ci_low: iv.lo,
        ci_high: iv.hi,
        predictions: predictions_for(cfg, mean_beta_actual)?,
        effect_types,
        fisher_p,
        wilcoxon_p,
        observed_successes: successes,
        observed_trials: trials,
        stage_counts: counts,
        n_floored,
        assumptions: Assumptions {
            test_model: "all tests treated as two-sided normal".into(),
            t: cfg.t,
            alpha: cfg.alpha,
            alpha_star: cfg.alpha_star,
            p_floor: cfg.p_floor,
        },
        warnings,
    };
    Ok(ReanalysisReport { summary, studies })
}

/// Full reanalysis of a replication table under the completeness-then-
/// significance filter (the psychology-dataset path).
pub fn summarize(
    records: &[StudyRecord],
    cfg: &PipelineConfig,
    warnings: Vec<String>,
) -> Result<ReanalysisReport, Error> {
    let filtered = filter_eligible(records);
    summarize_filtered(&filtered.significant, filtered.counts, cfg, warnings)
}

/// Threshold handling for the economics table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EcoVariant {
    /// Keep all studies, threshold z_{0.05}.
    Default,
    /// Drop originals with P > 0.05 and tighten the threshold to z_{0.025}.
    Alternative,
}

/// Reanalysis of the economics replication table.
///
/// Eligibility is simply "original P-value present": the published table
/// kept two originals with P > 0.05 under a widened threshold, and the
/// alternative variant instead drops them and tightens the threshold.
pub fn run_eco(
    records: &[StudyRecord],
    variant: EcoVariant,
    warnings: Vec<String>,
) -> Result<ReanalysisReport, Error> {
    let cfg = match variant {
        EcoVariant::Default => PipelineConfig::eco_default(),
        EcoVariant::Alternative => PipelineConfig::osc_default(),
    };
    let kept: Vec<StudyRecord> = records
        .iter()
        .filter(|r| match (variant, r.p_original) {
            (_, None) => false,
            (EcoVariant::Default, Some(_)) => true,
            (EcoVariant::Alternative, Some(p)) => p <= 0.05,
        })
        .cloned()
        .collect();
    let with_pvalue = kept.len();
    let usable = kept
        .iter()
        .filter(|r| r.replication_power.is_some())
        .count();
    let counts = StageCounts {
        loaded: records.len(),
        complete: kept.len(),
        significant: kept.len(),
        with_pvalue,
        usable,
    };
    summarize_filtered(&kept, counts, &cfg, warnings)
}

/// Direct-estimate comparison for a many-replication protocol, where the
/// replication errors vanish and the observed rate estimates PPV itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MlRpReport {
    pub successes: u64,
    pub trials: u64,
    pub observed: f64,
    pub predicted_ppv: f64,
    pub abs_difference: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Whether the exact interval covers the prediction.
    pub covered: bool,
}

/// Compare an observed many-replication reproduction count against the
/// PPV predicted from a prevalence scenario.
pub fn ml_rp_check(k: u64, n: u64, scenario: &ReproScenario) -> Result<MlRpReport, Error> {
    let iv = clopper_pearson(k, n, 0.95)?;
    let observed = k as f64 / n as f64;
    let predicted = ppv_from_prevalence(scenario);
    Ok(MlRpReport {
        successes: k,
        trials: n,
        observed,
        predicted_ppv: predicted,
        abs_difference: (observed - predicted).abs(),
        ci_low: iv.lo,
        ci_high: iv.hi,
        covered: iv.contains(predicted),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{load_studies, ColumnMap};
    use approx::assert_abs_diff_eq;

    const Z_025: f64 = 1.959963984540054;

    fn record(
        id: &str,
        p: Option<f64>,
        power: Option<f64>,
        sig_o: Option<bool>,
        sig_r: Option<bool>,
        et: Option<EffectType>,
    ) -> StudyRecord {
        StudyRecord {
            id: id.into(),
            n_original: None,
            n_replication: None,
            effect_type: et,
            replication_power: power,
            p_original: p,
            sig_original: sig_o,
            sig_replication: sig_r,
        }
    }

    #[test]
    fn filter_counts_each_stage() {
        let records = vec![
            // complete + significant + p + power
            record("a", Some(0.01), Some(0.9), Some(true), Some(true), None),
            // complete + significant, missing power
            record("b", Some(0.02), None, Some(true), Some(false), None),
            // complete + significant, missing p
            record("c", None, Some(0.8), Some(true), Some(false), None),
            // complete but not significant
            record("d", Some(0.2), Some(0.9), Some(false), Some(false), None),
            // incomplete (no replication flag)
            record("e", Some(0.01), Some(0.9), Some(true), None, None),
        ];
        let f = filter_eligible(&records);
        assert_eq!(f.counts.loaded, 5);
        assert_eq!(f.counts.complete, 4);
        assert_eq!(f.counts.significant, 3);
        assert_eq!(f.counts.with_pvalue, 2);
        assert_eq!(f.counts.usable, 1);
        assert!(filter_eligible(&[]).significant.is_empty());
    }

    #[test]
    fn impute_examples() {
        let z = impute_zp(0.05, 1e-6).unwrap();
        assert_abs_diff_eq!(z.z_p, Z_025, epsilon = 1e-9);
        assert!(!z.floored);
        // zero P-value is floored and flagged
        let z = impute_zp(0.0, 1e-6).unwrap();
        assert!(z.floored);
        assert_abs_diff_eq!(z.z_p, 4.891638475714779, epsilon = 1e-9);
        assert!((z.z_p - 4.89).abs() < 0.01);
        // an absurdly small reported value gets the same floor
        let z = impute_zp(1.39e-43, 1e-6).unwrap();
        assert!(z.floored);
        assert_eq!(z.p_floored, 1e-6);
        assert!(impute_zp(1.5, 1e-6).is_err());
    }

    #[test]
    fn study_beta_limits() {
        // zero effect: the future study rejects with probability alpha
        let b = study_actual_beta(0.0, 0.1, Z_025, 0.05).unwrap();
        assert_abs_diff_eq!(b, 0.95, epsilon = 1e-8);
        // huge effect: no truncation bias left, actual approaches nominal
        let b = study_actual_beta(12.0, 0.17, Z_025, 0.05).unwrap();
        assert_abs_diff_eq!(b, 0.17, epsilon = 3e-3);
        let b = study_actual_beta(25.0, 0.17, Z_025, 0.05).unwrap();
        assert_abs_diff_eq!(b, 0.17, epsilon = 6e-4);
    }

    fn eco_records() -> Vec<StudyRecord> {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/eco_rp.csv");
        load_studies(&path, &ColumnMap::eco_default()).unwrap().records
    }

    #[test]
    fn eco_default_reproduces_published_aggregates() {
        let report = run_eco(&eco_records(), EcoVariant::Default, vec![]).unwrap();
        let s = &report.summary;
        assert_eq!(s.observed_trials, 18);
        assert_eq!(s.observed_successes, 11);
        assert_eq!(s.n_used, 18);
        assert_abs_diff_eq!(s.mean_beta_actual, 0.441, epsilon = 0.015);
        let pred25 = s.predictions.iter().find(|p| p.pi == 0.25).unwrap();
        assert_abs_diff_eq!(pred25.predicted_ppv_obs, 0.486, epsilon = 0.015);
        assert_abs_diff_eq!(s.ci_low, 0.357, epsilon = 1e-3);
        assert_abs_diff_eq!(s.ci_high, 0.827, epsilon = 1e-3);
        // no effect types in this table
        assert!(s.effect_types.is_empty());
        assert!(s.fisher_p.is_none());
    }

    #[test]
    fn eco_alternative_variant() {
        let report = run_eco(&eco_records(), EcoVariant::Alternative, vec![]).unwrap();
        let s = &report.summary;
        assert_eq!(s.n_used, 16);
        assert_abs_diff_eq!(s.mean_beta_actual, 0.499, epsilon = 0.015);
        let pred25 = s.predictions.iter().find(|p| p.pi == 0.25).unwrap();
        assert_abs_diff_eq!(pred25.predicted_ppv_obs, 0.437, epsilon = 0.015);
    }

    #[test]
    fn eco_single_study_degenerates_gracefully() {
        let one = vec![record("x", Some(0.01), Some(0.9), Some(true), Some(true), None)];
        let report = run_eco(&one, EcoVariant::Default, vec![]).unwrap();
        assert_eq!(report.summary.observed_trials, 1);
        assert_eq!(report.summary.observed, 1.0);
        assert_eq!(report.summary.ci_high, 1.0);
        assert!(report.summary.wilcoxon_p.is_none());
    }

    #[test]
    fn summarize_synthetic_cohort() {
        let records = vec![
            record("a", Some(1e-5), Some(0.9), Some(true), Some(true), Some(EffectType::MainEffect)),
            record("b", Some(0.003), Some(0.85), Some(true), Some(true), Some(EffectType::MainEffect)),
            record("c", Some(0.02), Some(0.9), Some(true), Some(false), Some(EffectType::Interaction)),
            record("d", Some(0.04), Some(0.95), Some(true), Some(false), Some(EffectType::Interaction)),
            record("e", Some(0.01), Some(0.8), Some(true), Some(false), Some(EffectType::Correlation)),
            record("f", Some(0.5), Some(0.9), Some(false), Some(false), Some(EffectType::MainEffect)),
        ];
        let report = summarize(&records, &PipelineConfig::osc_default(), vec![]).unwrap();
        let s = &report.summary;
        assert_eq!(s.stage_counts.significant, 5);
        assert_eq!(s.observed_trials, 5);
        assert_eq!(s.observed_successes, 2);
        assert_eq!(s.n_used, 5);
        // every study's actual error is a probability and the estimated
        // noncentralities respect the floor and the observation bound
        for st in &report.studies {
            assert!((0.0..=1.0).contains(&st.beta_actual));
            assert!(st.eta_hat >= 0.0 && st.eta_hat < st.z_p + 1e-12);
        }
        // effect-type rows are present with exact counts
        let main = s.effect_types.iter().find(|r| r.effect_type == "main effect").unwrap();
        assert_eq!((main.reproduced, main.total), (2, 2));
        let inter = s.effect_types.iter().find(|r| r.effect_type == "interaction").unwrap();
        assert_eq!((inter.reproduced, inter.total), (0, 2));
        assert!(s.fisher_p.is_some());
        assert!(s.wilcoxon_p.is_some());
        // predictions recompute exactly through the algebra
        for row in &s.predictions {
            let scen = ReproScenario::with_default_rates(row.pi).unwrap();
            let ppv = ppv_from_prevalence(&scen);
            assert_abs_diff_eq!(
                row.predicted_ppv_obs,
                ppv_obs_from_ppv(ppv, 0.05, s.mean_beta_actual),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn pipeline_is_deterministic_and_order_independent() {
        let mut records = eco_records();
        let a = run_eco(&records, EcoVariant::Default, vec![]).unwrap();
        records.reverse();
        let b = run_eco(&records, EcoVariant::Default, vec![]).unwrap();
        assert_eq!(a.summary.mean_beta_actual.to_bits(), b.summary.mean_beta_actual.to_bits());
        assert_eq!(a.studies, b.studies);
    }

    #[test]
    fn ml_rp_examples() {
        let scen = ReproScenario::with_default_rates(0.25).unwrap();
        let r = ml_rp_check(11, 13, &scen).unwrap();
        assert_abs_diff_eq!(r.observed, 11.0 / 13.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.predicted_ppv, 6.0 / 7.0, epsilon = 1e-12);
        assert!(r.abs_difference < 0.02);
        assert!(r.covered);

        let r = ml_rp_check(13, 13, &scen).unwrap();
        assert_eq!(r.observed, 1.0);
        let r = ml_rp_check(0, 13, &scen).unwrap();
        assert_eq!(r.observed, 0.0);
        assert!(!r.covered);
    }
}
