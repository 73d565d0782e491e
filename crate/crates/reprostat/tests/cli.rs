//! End-to-end checks of the command-line surface: output contents, file
//! artifacts with manifests, and the distinct exit codes for usage,
//! schema and numeric-domain failures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_reprostat")
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn ppv_table_matches_reference_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["ppv", "--pi", "1,0.5,0.25,0.05"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for expected in ["1.000", "0.947", "0.857", "0.486"] {
        assert!(text.contains(expected), "missing {expected} in:\n{text}");
    }
}

#[test]
fn ppv_invert_boundary_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["ppv", "invert", "--ppv-obs", "0.05", "--alpha-star", "0.05", "--beta-star", "0.1"],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "ppv = 0");
}

#[test]
fn ppv_rejects_out_of_range_prevalence() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["ppv", "--pi", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["ppv", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn power_surface_writes_grid_with_published_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "power", "surface", "--metric", "beta_c", "--eta-min", "1", "--eta-max", "2",
            "--t-min", "1.959963984540054", "--t-max", "2.5", "--resolution", "3",
            "--out-csv", "grid.csv", "--out-svg", "plot.svg",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("eta,t,value"));
    // first cell is (eta = 1, t = z_{0.025}): the conditional error there
    let first = lines.next().unwrap();
    let value: f64 = first.rsplit(',').next().unwrap().parse().unwrap();
    assert!((value - 0.7276987175).abs() < 1e-6, "cell value {value}");

    // manifests accompany both artifacts
    assert!(dir.path().join("grid.csv.manifest.json").exists());
    assert!(dir.path().join("plot.svg.manifest.json").exists());
    let svg = std::fs::read_to_string(dir.path().join("plot.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("stroke-dasharray")); // unit-ratio overlay or markers
    let manifest = std::fs::read_to_string(dir.path().join("grid.csv.manifest.json")).unwrap();
    assert!(manifest.contains("\"subcommand\": \"power surface\""));
    assert!(manifest.contains("\"metric\": \"beta_c\""));
}

#[test]
fn power_surface_2x2_gives_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "power", "surface", "--resolution", "2", "--eta-min", "1", "--eta-max", "2",
            "--t-min", "1.5", "--t-max", "2.0", "--out-csv", "grid.csv",
        ],
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("grid.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5); // header + 4 cells
}

#[test]
fn power_calibrate_reports_root_of_calibration_equation() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["power", "calibrate", "--target-beta", "0.1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // the printed nominal value solves the self-consistent equation
    // (frozen root; the attained line must read back the target)
    assert!(text.contains("nominal beta = 0.054687"), "{text}");
    assert!(text.contains("attained actual beta = 0.100000"), "{text}");
}

#[test]
fn mle_subcommand_values_and_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["mle", "--zp", "3.0"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("eta_hat = 2.5223781"));

    let out = run_in(dir.path(), &["mle", "--zp", "1.959963984540054"]);
    assert_eq!(stdout(&out).trim(), "eta_hat = -inf");

    // observation below the threshold is a numeric-domain error
    let out = run_in(dir.path(), &["mle", "--zp", "1.0"]);
    assert_eq!(out.status.code(), Some(4));

    // profile dump
    let out = run_in(
        dir.path(),
        &["mle", "--zp", "3.0", "--profile", "prof.csv", "--eta-min", "-5", "--steps", "100"],
    );
    assert!(out.status.success());
    let prof = std::fs::read_to_string(dir.path().join("prof.csv")).unwrap();
    assert_eq!(prof.lines().next(), Some("eta,loglik"));
    assert_eq!(prof.lines().count(), 101);
}

#[test]
fn reanalyze_eco_prints_aggregates() {
    let dir = tempfile::tempdir().unwrap();
    let eco = data_dir().join("eco_rp.csv");
    let out = run_in(
        dir.path(),
        &["reanalyze", "eco", "--input", eco.to_str().unwrap(), "--out", "result"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("mean actual type II     = 0.4410"), "{text}");
    assert!(text.contains("observed reproducibility = 11/18"), "{text}");
    // summary document carries the fixed key set
    let summary = std::fs::read_to_string(dir.path().join("result/summary.json")).unwrap();
    for key in [
        "\"n_total\"",
        "\"n_used\"",
        "\"mean_beta_actual\"",
        "\"observed\"",
        "\"ci_low\"",
        "\"ci_high\"",
        "\"predictions\"",
        "\"effect_types\"",
        "\"fisher_p\"",
        "\"wilcoxon_p\"",
    ] {
        assert!(summary.contains(key), "summary missing {key}");
    }
    let studies = std::fs::read_to_string(dir.path().join("result/studies.csv")).unwrap();
    assert_eq!(
        studies.lines().next(),
        Some("id,p,z_p,eta_hat,beta_nominal,beta_actual")
    );
    assert_eq!(studies.lines().count(), 19);
    // manifest records the input digest
    let manifest =
        std::fs::read_to_string(dir.path().join("result/summary.json.manifest.json")).unwrap();
    assert!(manifest.contains("\"sha256\""));
}

#[test]
fn reanalyze_eco_alternative_flag() {
    let dir = tempfile::tempdir().unwrap();
    let eco = data_dir().join("eco_rp.csv");
    let out = run_in(
        dir.path(),
        &["reanalyze", "eco", "--input", eco.to_str().unwrap(), "--alternative"],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mean actual type II     = 0.4991"), "{text}");
}

#[test]
fn reanalyze_osc_runs_on_table_shaped_like_the_export() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("mini.csv"),
        "ID,N (O),N (R),Type of effect (O),Power (R),T_pval_USE..O.,T_sign_O,T_sign_R\n\
         1,40,55,main effect,0.92,0.004,1,1\n\
         2,80,90,interaction,0.85,0.03,1,0\n\
         3,25,30,main effect,0.90,1.2e-9,1,1\n\
         4,60,60,correlation,0.88,0.012,1,0\n\
         5,45,50,interaction,0.95,0.2,0,0\n\
         6,100,NA,main effect,NA,0.02,1,0\n",
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["reanalyze", "osc", "--input", "mini.csv", "--out", "res"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // 6 loaded, 6 complete, 5 originally significant, 4 usable
    assert!(text.contains("= 6 complete / 5 significant / 5 with P / 4 usable"), "{text}");
    let summary = std::fs::read_to_string(dir.path().join("res/summary.json")).unwrap();
    assert!(summary.contains("\"n_used\": 4"));
    // the floored extreme P-value is counted
    assert!(summary.contains("\"n_floored\": 1"));
}

#[test]
fn reanalyze_missing_input_fails_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["reanalyze", "osc", "--input", "no-such-file.csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-file.csv"));
}

#[test]
fn reanalyze_schema_error_names_missing_header() {
    let dir = tempfile::tempdir().unwrap();
    // a file lacking the power column under the strict built-in map
    std::fs::write(
        dir.path().join("partial.csv"),
        "N (O),N (R),Type of effect (O),T_pval_USE..O.,T_sign_O,T_sign_R\n1,2,main effect,0.01,1,1\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["reanalyze", "osc", "--input", "partial.csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Power (R)"));
}

#[test]
fn reanalyze_mlrp_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["reanalyze", "mlrp", "--k", "11", "--n", "13"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("observed = 11/13 = 0.8462"), "{text}");
    assert!(text.contains("predicted ppv (pi = 0.25) = 0.8571"), "{text}");
    assert!(text.contains("interval covers prediction = yes"), "{text}");
}

#[test]
fn simulate_reports_estimate_and_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["simulate", "ppv", "--pi", "0.5", "--draws", "50000", "--seed", "42", "--out", "est.json"],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ppv = 0.9"), "{text}");
    assert!(text.contains("se away"), "{text}");
    let json = std::fs::read_to_string(dir.path().join("est.json")).unwrap();
    assert!(json.contains("\"std_error\""));
    let manifest = std::fs::read_to_string(dir.path().join("est.json.manifest.json")).unwrap();
    assert!(manifest.contains("\"seed\": 42"));
}

#[test]
fn simulate_two_stage_conditional() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["simulate", "two-stage", "--eta", "1.96", "--draws", "50000", "--seed", "5"],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("beta = 0.34"), "{text}");
    assert!(text.contains("ratio = 1.5"), "{text}");
}
