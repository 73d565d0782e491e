//! Command-line surface.
//!
//! Human-readable results go to standard output; machine-readable
//! artifacts (CSV, JSON, SVG) are written behind `--out*` flags, each
//! accompanied by a manifest recording the invocation, tool version,
//! input digests and seed. Exit codes: 0 success, 2 usage, 3 schema or
//! config, 4 numeric domain, 5 I/O.

use crate::error::Error;
use crate::ingest::ColumnMap;
use crate::kernels::{z_upper, Interval};
use crate::mle::{mle_eta, truncated_loglik, TruncatedObservation, SEARCH_LOWER_BOUND};
use crate::power::{
    calibrate_nominal_beta, expected_beta, expected_ratio, sample_size_ratio_hat, surface_grid,
    DecisionRule, Side, SurfaceMetric, TwoStageConfig,
};
use crate::reanalysis::{
    ml_rp_check, run_eco, summarize, EcoVariant, PipelineConfig, ReanalysisReport,
};
use crate::report::{
    per_study_csv, profile_csv, summary_text, surface_csv, RunManifest,
};
use crate::repro::{ppv_from_ppv_obs, scenario_table, ReproScenario};
use crate::sim::{simulate_ppv, simulate_ppv_obs, simulate_two_stage, Estimate, SimConfig};
use crate::svg::{decile_levels, render_contours, render_profile};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "reprostat",
    version,
    about = "Reproducibility modeling, two-stage power analysis and replication reanalysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predicted PPV and observed reproducibility for prevalence scenarios
    Ppv(PpvArgs),
    /// Two-stage power surfaces and nominal-error calibration
    Power {
        #[command(subcommand)]
        command: PowerCommand,
    },
    /// Truncated-normal effect-size MLE
    Mle(MleArgs),
    /// Replication-dataset reanalysis
    Reanalyze {
        #[command(subcommand)]
        command: ReanalyzeCommand,
    },
    /// Seeded Monte Carlo cross-checks of the closed forms
    Simulate {
        #[command(subcommand)]
        command: SimulateCommand,
    },
}

#[derive(Args)]
struct PpvArgs {
    #[command(subcommand)]
    mode: Option<PpvMode>,
    /// Comma-separated effect prevalences
    #[arg(long, value_delimiter = ',')]
    pi: Vec<f64>,
    /// Original-study type I error
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Original-study type II error
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    /// Replication type I error
    #[arg(long = "alpha-star", default_value_t = 0.05)]
    alpha_star: f64,
    /// Replication type II error
    #[arg(long = "beta-star", default_value_t = 0.1)]
    beta_star: f64,
    /// Write the table as CSV here (with a manifest)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PpvMode {
    /// Recover PPV from an observed reproducibility rate
    Invert(InvertArgs),
}

#[derive(Args)]
struct InvertArgs {
    /// Observed reproducibility rate
    #[arg(long = "ppv-obs")]
    ppv_obs: f64,
    #[arg(long = "alpha-star", default_value_t = 0.05)]
    alpha_star: f64,
    #[arg(long = "beta-star", default_value_t = 0.1)]
    beta_star: f64,
}

#[derive(Subcommand)]
enum PowerCommand {
    /// Tabulate an expectation over an (eta, t) grid; optionally render
    /// SVG contours with the unit-ratio overlay
    Surface(SurfaceArgs),
    /// Nominal type II error attaining a target actual error
    Calibrate(CalibrateArgs),
}

#[derive(Args)]
struct SurfaceArgs {
    /// beta_u | beta_c | rstar_u | rstar_c
    #[arg(long, default_value = "beta_c")]
    metric: SurfaceMetric,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    /// one-sided | two-sided
    #[arg(long, default_value = "two-sided")]
    side: Side,
    #[arg(long = "eta-min", default_value_t = 0.5, allow_negative_numbers = true)]
    eta_min: f64,
    #[arg(long = "eta-max", default_value_t = 4.5, allow_negative_numbers = true)]
    eta_max: f64,
    #[arg(long = "t-min", default_value_t = 1.0)]
    t_min: f64,
    #[arg(long = "t-max", default_value_t = 3.0)]
    t_max: f64,
    /// Grid points per axis
    #[arg(long, default_value_t = 101)]
    resolution: usize,
    /// Contour levels (default: interior deciles of the value range)
    #[arg(long, value_delimiter = ',')]
    levels: Vec<f64>,
    /// Write the grid CSV here
    #[arg(long = "out-csv")]
    out_csv: Option<PathBuf>,
    /// Write the SVG contour plot here
    #[arg(long = "out-svg")]
    out_svg: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Actual type II error to attain
    #[arg(long = "target-beta")]
    target_beta: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Preliminary threshold (default z_{alpha/2})
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value = "two-sided")]
    side: Side,
}

#[derive(Args)]
struct MleArgs {
    /// Observed statistic
    #[arg(long, allow_negative_numbers = true)]
    zp: f64,
    /// Truncation threshold (default z_{0.025})
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Write a likelihood-profile CSV here
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Write a likelihood-profile SVG here
    #[arg(long = "profile-svg")]
    profile_svg: Option<PathBuf>,
    /// Profile range lower end (default search lower bound)
    #[arg(long = "eta-min", allow_negative_numbers = true)]
    eta_min: Option<f64>,
    /// Profile range upper end (default z_p)
    #[arg(long = "eta-max", allow_negative_numbers = true)]
    eta_max: Option<f64>,
    /// Profile points
    #[arg(long, default_value_t = 400)]
    steps: usize,
}

#[derive(Subcommand)]
enum ReanalyzeCommand {
    /// Psychology replication table (fetched rpp_data.csv)
    Osc(OscArgs),
    /// Economics replication table (bundled transcription)
    Eco(EcoArgs),
    /// Many-replication direct PPV comparison
    Mlrp(MlRpArgs),
}

#[derive(Args)]
struct OscArgs {
    /// Input CSV (see scripts/fetch_rpp_data.sh)
    #[arg(long, default_value = "data/rpp_data.csv")]
    input: PathBuf,
    /// Column map file (default: built-in bindings)
    #[arg(long)]
    columns: Option<PathBuf>,
    /// Prevalence scenarios
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 0.5, 0.25, 0.05])]
    scenarios: Vec<f64>,
    /// Lower bound imposed on original P-values
    #[arg(long = "p-floor", default_value_t = 1e-6)]
    p_floor: f64,
    /// Truncation threshold (default z_{0.025})
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Directory for summary.json and studies.csv
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EcoArgs {
    #[arg(long, default_value = "data/eco_rp.csv")]
    input: PathBuf,
    #[arg(long)]
    columns: Option<PathBuf>,
    /// Drop originals with P > 0.05 and tighten the threshold to z_{0.025}
    #[arg(long)]
    alternative: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MlRpArgs {
    /// Successful replications
    #[arg(long)]
    k: u64,
    /// Studies replicated
    #[arg(long)]
    n: u64,
    /// Assumed effect prevalence
    #[arg(long, default_value_t = 0.25)]
    pi: f64,
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Decision-tree estimate of PPV
    Ppv(SimPpvArgs),
    /// Decision-tree estimate of the observed reproducibility
    PpvObs(SimPpvObsArgs),
    /// Literal two-stage procedure
    TwoStage(SimTwoStageArgs),
}

#[derive(Args)]
struct SimPpvArgs {
    #[arg(long)]
    pi: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    #[arg(long, default_value_t = 1_000_000)]
    draws: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimPpvObsArgs {
    #[command(flatten)]
    base: SimPpvArgs,
    #[arg(long = "alpha-star", default_value_t = 0.05)]
    alpha_star: f64,
    #[arg(long = "beta-star", default_value_t = 0.1)]
    beta_star: f64,
}

#[derive(Args)]
struct SimTwoStageArgs {
    #[arg(long, allow_negative_numbers = true)]
    eta: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    /// Preliminary threshold (default z_{alpha/2})
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value = "two-sided")]
    side: Side,
    /// conditional | unconditional
    #[arg(long, default_value = "conditional")]
    rule: DecisionRule,
    #[arg(long, default_value_t = 1_000_000)]
    draws: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl clap::builder::ValueParserFactory for SurfaceMetric {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<SurfaceMetric>().map_err(|e| e.to_string()))
    }
}

impl clap::builder::ValueParserFactory for Side {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Side>().map_err(|e| e.to_string()))
    }
}

impl clap::builder::ValueParserFactory for DecisionRule {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<DecisionRule>().map_err(|e| e.to_string()))
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ppv(args) => cmd_ppv(args),
        Command::Power { command } => match command {
            PowerCommand::Surface(args) => cmd_power_surface(args),
            PowerCommand::Calibrate(args) => cmd_power_calibrate(args),
        },
        Command::Mle(args) => cmd_mle(args),
        Command::Reanalyze { command } => match command {
            ReanalyzeCommand::Osc(args) => cmd_reanalyze_osc(args),
            ReanalyzeCommand::Eco(args) => cmd_reanalyze_eco(args),
            ReanalyzeCommand::Mlrp(args) => cmd_reanalyze_mlrp(args),
        },
        Command::Simulate { command } => match command {
            SimulateCommand::Ppv(args) => cmd_simulate_ppv(args),
            SimulateCommand::PpvObs(args) => cmd_simulate_ppv_obs(args),
            SimulateCommand::TwoStage(args) => cmd_simulate_two_stage(args),
        },
    }
}

fn require_probability(name: &str, v: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(CliError::Usage(format!("--{name} must lie in [0,1], got {v}")));
    }
    Ok(())
}

fn default_t(alpha: f64, side: Side) -> Result<f64, CliError> {
    let p = match side {
        Side::OneSided => alpha,
        Side::TwoSided => alpha / 2.0,
    };
    Ok(z_upper(p)?)
}

fn cmd_ppv(args: PpvArgs) -> Result<(), CliError> {
    if let Some(PpvMode::Invert(inv)) = args.mode {
        require_probability("ppv-obs", inv.ppv_obs)?;
        require_probability("alpha-star", inv.alpha_star)?;
        require_probability("beta-star", inv.beta_star)?;
        let e = ppv_from_ppv_obs(inv.ppv_obs, inv.alpha_star, inv.beta_star)?;
        if e.clamped {
            println!("ppv = {} (clamped)", e.value);
        } else {
            println!("ppv = {}", e.value);
        }
        return Ok(());
    }
    if args.pi.is_empty() {
        return Err(CliError::Usage(
            "provide --pi <list> or the `invert` subcommand".into(),
        ));
    }
    for (name, v) in [
        ("alpha", args.alpha),
        ("beta", args.beta),
        ("alpha-star", args.alpha_star),
        ("beta-star", args.beta_star),
    ] {
        require_probability(name, v)?;
    }
    let scenarios: Vec<ReproScenario> = args
        .pi
        .iter()
        .map(|&pi| {
            if !(0.0..=1.0).contains(&pi) {
                return Err(CliError::Usage(format!("--pi values must lie in [0,1], got {pi}")));
            }
            ReproScenario::new(pi, args.alpha, args.beta, args.alpha_star, args.beta_star)
                .map_err(CliError::Lib)
        })
        .collect::<Result<_, _>>()?;
    let rows = scenario_table(&scenarios);
    println!("{:>8} {:>8} {:>8}", "pi", "ppv", "ppv_obs");
    for r in &rows {
        println!("{:>8.3} {:>8.3} {:>8.3}", r.pi, r.ppv, r.ppv_obs);
    }
    if let Some(out) = args.out {
        let mut csv = String::from("pi,ppv,ppv_obs\n");
        for r in &rows {
            csv.push_str(&format!("{},{},{}\n", r.pi, r.ppv, r.ppv_obs));
        }
        let manifest = RunManifest::new("ppv")
            .param("pi", join(&args.pi))
            .param("alpha", args.alpha)
            .param("beta", args.beta)
            .param("alpha_star", args.alpha_star)
            .param("beta_star", args.beta_star);
        manifest.write_artifact(&out, &csv)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn join(vals: &[f64]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_power_surface(args: SurfaceArgs) -> Result<(), CliError> {
    let cfg = TwoStageConfig::new(args.side, args.alpha, args.beta, args.t_min.max(1e-6))?;
    let eta_range = Interval::new(args.eta_min, args.eta_max)?;
    let t_range = Interval::new(args.t_min, args.t_max)?;
    let surface = surface_grid(
        eta_range,
        t_range,
        (args.resolution, args.resolution),
        &cfg,
        args.metric,
    )?;
    println!(
        "{} surface: {} x {} cells, range [{:.4}, {:.4}]",
        surface.metric.as_str(),
        surface.eta_axis.len(),
        surface.t_axis.len(),
        surface.min_value(),
        surface.max_value()
    );
    println!(
        "markers: t = {:.6}, eta = {:.6}",
        surface.marker_t, surface.marker_eta
    );

    let manifest = || -> RunManifest {
        RunManifest::new("power surface")
            .param("metric", args.metric.as_str())
            .param("alpha", args.alpha)
            .param("beta", args.beta)
            .param("side", args.side.as_str())
            .param("eta_min", args.eta_min)
            .param("eta_max", args.eta_max)
            .param("t_min", args.t_min)
            .param("t_max", args.t_max)
            .param("resolution", args.resolution)
            .param("levels", join(&args.levels))
    };

    if let Some(path) = &args.out_csv {
        manifest().write_artifact(path, &surface_csv(&surface))?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = &args.out_svg {
        let levels = if args.levels.is_empty() {
            decile_levels(&surface)
        } else {
            args.levels.clone()
        };
        // the conventional unit-ratio overlay accompanies the error
        // surfaces, mirroring its role as the n*/n = 1 reference
        let overlay = match args.metric {
            SurfaceMetric::BetaU | SurfaceMetric::BetaC => {
                let ratio_metric = match args.metric {
                    SurfaceMetric::BetaU => SurfaceMetric::RStarU,
                    _ => SurfaceMetric::RStarC,
                };
                Some(surface_grid(
                    eta_range,
                    t_range,
                    (args.resolution, args.resolution),
                    &cfg,
                    ratio_metric,
                )?)
            }
            _ => None,
        };
        let plot = render_contours(&surface, &levels, overlay.as_ref());
        for w in &plot.warnings {
            eprintln!("warning: {w}");
        }
        manifest().write_artifact(path, &plot.svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_power_calibrate(args: CalibrateArgs) -> Result<(), CliError> {
    if !(args.target_beta > 0.0 && args.target_beta < 1.0) {
        return Err(CliError::Usage(format!(
            "--target-beta must lie in (0,1), got {}",
            args.target_beta
        )));
    }
    let t = match args.t {
        Some(t) => t,
        None => default_t(args.alpha, args.side)?,
    };
    let nominal = calibrate_nominal_beta(args.target_beta, t, args.alpha, args.side)?;
    let cfg = TwoStageConfig::new(args.side, args.alpha, nominal, t)?;
    let eta = cfg.z_sum();
    let attained = expected_beta(eta, &cfg, DecisionRule::Conditional)?;
    let ratio = expected_ratio(eta, &cfg, DecisionRule::Conditional)?;
    let max_ratio = sample_size_ratio_hat(t, &cfg)?;
    println!("nominal beta = {nominal:.6}");
    println!("planning eta = {eta:.6}");
    println!("attained actual beta = {attained:.6}");
    println!("expected sample-size ratio at planning point = {ratio:.6}");
    println!("maximal ratio (z_p at threshold) = {max_ratio:.6}");
    Ok(())
}

fn cmd_mle(args: MleArgs) -> Result<(), CliError> {
    let t = match args.t {
        Some(t) => t,
        None => z_upper(0.025)?,
    };
    let obs = TruncatedObservation::new(args.zp, t)?;
    let estimate = mle_eta(&obs);
    println!("eta_hat = {estimate}");

    if args.profile.is_some() || args.profile_svg.is_some() {
        let lo = args.eta_min.unwrap_or(SEARCH_LOWER_BOUND);
        let hi = args.eta_max.unwrap_or(args.zp);
        if lo.is_nan() || hi.is_nan() || lo >= hi || args.steps < 2 {
            return Err(CliError::Usage(
                "profile range must satisfy eta-min < eta-max with steps >= 2".into(),
            ));
        }
        let step = (hi - lo) / (args.steps - 1) as f64;
        let points: Vec<(f64, f64)> = (0..args.steps)
            .map(|i| {
                let eta = lo + step * i as f64;
                (eta, truncated_loglik(eta, &obs))
            })
            .collect();
        let manifest = RunManifest::new("mle")
            .param("zp", args.zp)
            .param("t", t)
            .param("eta_min", lo)
            .param("eta_max", hi)
            .param("steps", args.steps);
        if let Some(path) = &args.profile {
            manifest.write_artifact(path, &profile_csv(&points))?;
            println!("wrote {}", path.display());
        }
        if let Some(path) = &args.profile_svg {
            let svg = render_profile(&points, &format!("log-likelihood, z_p = {}", args.zp));
            manifest.write_artifact(path, &svg)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn print_summary_human(report: &ReanalysisReport) {
    let s = &report.summary;
    println!("records loaded          = {}", s.n_total);
    println!(
        "stage counts            = {} complete / {} significant / {} with P / {} usable",
        s.stage_counts.complete, s.stage_counts.significant, s.stage_counts.with_pvalue,
        s.stage_counts.usable
    );
    println!("studies in beta average = {}", s.n_used);
    println!("mean actual type II     = {:.4}", s.mean_beta_actual);
    println!(
        "observed reproducibility = {}/{} = {:.4}, 95% CI ({:.4}, {:.4})",
        s.observed_successes, s.observed_trials, s.observed, s.ci_low, s.ci_high
    );
    for p in &s.predictions {
        println!(
            "predicted ppv_obs (pi = {:.2}) = {:.4}  [ppv = {:.4}]",
            p.pi, p.predicted_ppv_obs, p.ppv
        );
    }
    for row in &s.effect_types {
        println!(
            "effect type {:<28} {}/{} = {:.4}, CI ({:.4}, {:.4})",
            row.effect_type, row.reproduced, row.total, row.rate, row.ci_low, row.ci_high
        );
    }
    match s.fisher_p {
        Some(p) => println!("fisher main-vs-interaction P = {p:.4}"),
        None => println!("fisher main-vs-interaction P = n/a"),
    }
    match s.wilcoxon_p {
        Some(p) => println!("wilcoxon z_p-by-outcome P = {p:.4}"),
        None => println!("wilcoxon z_p-by-outcome P = n/a"),
    }
    for w in &s.warnings {
        println!("warning: {w}");
    }
}

fn write_reanalysis_outputs(
    report: &ReanalysisReport,
    out: &std::path::Path,
    manifest: &RunManifest,
) -> Result<(), CliError> {
    std::fs::create_dir_all(out).map_err(Error::Io)?;
    manifest.write_artifact(&out.join("summary.json"), &summary_text(&report.summary))?;
    manifest.write_artifact(&out.join("studies.csv"), &per_study_csv(&report.studies))?;
    println!("wrote {}", out.join("summary.json").display());
    println!("wrote {}", out.join("studies.csv").display());
    Ok(())
}

fn cmd_reanalyze_osc(args: OscArgs) -> Result<(), CliError> {
    let map = match &args.columns {
        Some(path) => ColumnMap::load(path)?,
        None => ColumnMap::osc_default(),
    };
    let load = crate::ingest::load_studies(&args.input, &map)?;
    let t = match args.t {
        Some(t) => t,
        None => z_upper(0.025)?,
    };
    for &pi in &args.scenarios {
        require_probability("scenarios", pi)?;
    }
    let cfg = PipelineConfig {
        t,
        alpha: args.alpha,
        alpha_star: args.alpha,
        p_floor: args.p_floor,
        scenario_pis: args.scenarios.clone(),
    };
    let report = summarize(&load.records, &cfg, load.warnings.clone())?;
    print_summary_human(&report);
    if let Some(out) = &args.out {
        let manifest = RunManifest::new("reanalyze osc")
            .param("t", t)
            .param("alpha", args.alpha)
            .param("p_floor", args.p_floor)
            .param("scenarios", join(&args.scenarios))
            .input(&args.input)?;
        write_reanalysis_outputs(&report, out, &manifest)?;
    }
    Ok(())
}

fn cmd_reanalyze_eco(args: EcoArgs) -> Result<(), CliError> {
    let map = match &args.columns {
        Some(path) => ColumnMap::load(path)?,
        None => ColumnMap::eco_default(),
    };
    let load = crate::ingest::load_studies(&args.input, &map)?;
    let variant = if args.alternative {
        EcoVariant::Alternative
    } else {
        EcoVariant::Default
    };
    let report = run_eco(&load.records, variant, load.warnings.clone())?;
    print_summary_human(&report);
    if let Some(out) = &args.out {
        let manifest = RunManifest::new("reanalyze eco")
            .param("alternative", args.alternative)
            .input(&args.input)?;
        write_reanalysis_outputs(&report, out, &manifest)?;
    }
    Ok(())
}

fn cmd_reanalyze_mlrp(args: MlRpArgs) -> Result<(), CliError> {
    require_probability("pi", args.pi)?;
    if args.k > args.n || args.n == 0 {
        return Err(CliError::Usage(format!(
            "need 0 <= k <= n with n >= 1, got k={}, n={}",
            args.k, args.n
        )));
    }
    let scenario = ReproScenario::with_default_rates(args.pi)?;
    let r = ml_rp_check(args.k, args.n, &scenario)?;
    println!(
        "observed = {}/{} = {:.4}, 95% CI ({:.4}, {:.4})",
        r.successes, r.trials, r.observed, r.ci_low, r.ci_high
    );
    println!("predicted ppv (pi = {}) = {:.4}", args.pi, r.predicted_ppv);
    println!("absolute difference = {:.4}", r.abs_difference);
    println!(
        "interval covers prediction = {}",
        if r.covered { "yes" } else { "no" }
    );
    Ok(())
}

fn print_estimate(name: &str, est: &Estimate, reference: Option<f64>) {
    match reference {
        Some(r) => println!(
            "{name} = {} (se {}, basis {}), closed form {} ({:.2} se away)",
            est.value,
            est.std_error,
            est.basis,
            r,
            est.distance_in_se(r)
        ),
        None => println!("{name} = {} (se {}, basis {})", est.value, est.std_error, est.basis),
    }
}

fn write_estimate_json(
    out: &std::path::Path,
    manifest: RunManifest,
    payload: &impl serde::Serialize,
) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(payload).expect("estimate serializes");
    text.push('\n');
    manifest.write_artifact(out, &text)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_simulate_ppv(args: SimPpvArgs) -> Result<(), CliError> {
    require_probability("pi", args.pi)?;
    let scenario = ReproScenario::new(args.pi, args.alpha, args.beta, 0.05, 0.1)?;
    let cfg = SimConfig::new(args.draws, args.seed)?;
    let est = simulate_ppv(&scenario, &cfg)?;
    let exact = crate::repro::ppv_from_prevalence(&scenario);
    print_estimate("ppv", &est, Some(exact));
    if let Some(out) = &args.out {
        let manifest = RunManifest::new("simulate ppv")
            .param("pi", args.pi)
            .param("alpha", args.alpha)
            .param("beta", args.beta)
            .param("draws", args.draws)
            .seed(args.seed);
        write_estimate_json(out, manifest, &est)?;
    }
    Ok(())
}

fn cmd_simulate_ppv_obs(args: SimPpvObsArgs) -> Result<(), CliError> {
    require_probability("pi", args.base.pi)?;
    let scenario = ReproScenario::new(
        args.base.pi,
        args.base.alpha,
        args.base.beta,
        args.alpha_star,
        args.beta_star,
    )?;
    let cfg = SimConfig::new(args.base.draws, args.base.seed)?;
    let est = simulate_ppv_obs(&scenario, &cfg)?;
    let exact = crate::repro::ppv_obs_from_ppv(
        crate::repro::ppv_from_prevalence(&scenario),
        scenario.alpha_star,
        scenario.beta_star,
    );
    print_estimate("ppv_obs", &est, Some(exact));
    if let Some(out) = &args.base.out {
        let manifest = RunManifest::new("simulate ppv-obs")
            .param("pi", args.base.pi)
            .param("alpha", args.base.alpha)
            .param("beta", args.base.beta)
            .param("alpha_star", args.alpha_star)
            .param("beta_star", args.beta_star)
            .param("draws", args.base.draws)
            .seed(args.base.seed);
        write_estimate_json(out, manifest, &est)?;
    }
    Ok(())
}

fn cmd_simulate_two_stage(args: SimTwoStageArgs) -> Result<(), CliError> {
    let t = match args.t {
        Some(t) => t,
        None => default_t(args.alpha, args.side)?,
    };
    let ts = TwoStageConfig::new(args.side, args.alpha, args.beta, t)?;
    let cfg = SimConfig::new(args.draws, args.seed)?;
    let sim = simulate_two_stage(args.eta, &ts, args.rule, &cfg)?;
    let beta_exact = expected_beta(args.eta, &ts, args.rule).ok();
    let ratio_exact = expected_ratio(args.eta, &ts, args.rule).ok();
    print_estimate("beta", &sim.beta, beta_exact);
    print_estimate("ratio", &sim.ratio, ratio_exact);
    if let Some(out) = &args.out {
        let manifest = RunManifest::new("simulate two-stage")
            .param("eta", args.eta)
            .param("alpha", args.alpha)
            .param("beta", args.beta)
            .param("t", t)
            .param("side", args.side.as_str())
            .param(
                "rule",
                match args.rule {
                    DecisionRule::Conditional => "conditional",
                    DecisionRule::Unconditional => "unconditional",
                },
            )
            .param("draws", args.draws)
            .seed(args.seed);
        write_estimate_json(out, manifest, &sim)?;
    }
    Ok(())
}
