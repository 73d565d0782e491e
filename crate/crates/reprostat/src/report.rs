//! Artifact emission: structured-text summaries, CSV tables, and the run
//! manifest that accompanies every file artifact.
//!
//! All writers are deterministic: fixed key order, fixed column order,
//! and Rust's shortest-round-trip float formatting, so rerunning a
//! command with the same parameters reproduces byte-identical output.

use crate::error::Error;
use crate::power::{PowerSurface, SurfaceMetric};
use crate::reanalysis::{ImputedStudy, ReanalysisSummary};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Structured-text rendering of a reanalysis summary (pretty JSON with
/// the summary's fixed key order).
pub fn summary_text(summary: &ReanalysisSummary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

/// Per-study CSV: one row per pipeline study.
pub fn per_study_csv(studies: &[ImputedStudy]) -> String {
    let mut out = String::from("id,p,z_p,eta_hat,beta_nominal,beta_actual\n");
    for s in studies {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.id, s.p_original, s.z_p, s.eta_hat, s.beta_nominal, s.beta_actual
        ));
    }
    out
}

/// Grid CSV with the fixed `eta,t,value` column order, rows iterating t
/// within eta.
pub fn surface_csv(surface: &PowerSurface) -> String {
    let mut out = String::from("eta,t,value\n");
    for (i, &eta) in surface.eta_axis.iter().enumerate() {
        for (j, &t) in surface.t_axis.iter().enumerate() {
            out.push_str(&format!("{eta},{t},{}\n", surface.value(i, j)));
        }
    }
    out
}

/// Parse a grid CSV back into a surface; exact inverse of
/// [`surface_csv`] for the values and axes (markers are recomputed by
/// the caller's configuration, so they are taken as arguments).
pub fn parse_surface_csv(
    text: &str,
    metric: SurfaceMetric,
    marker_t: f64,
    marker_eta: f64,
) -> Result<PowerSurface, Error> {
    let mut lines = text.lines();
    match lines.next() {
        Some("eta,t,value") => {}
        other => {
            return Err(Error::Schema(format!(
                "grid CSV must start with `eta,t,value`, got {other:?}"
            )))
        }
    }
    let mut eta_axis: Vec<f64> = Vec::new();
    let mut t_axis: Vec<f64> = Vec::new();
    let mut triples: Vec<(f64, f64, f64)> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut cells = line.split(',');
        let mut next = |name: &str| -> Result<f64, Error> {
            cells
                .next()
                .ok_or_else(|| Error::Schema(format!("line {}: missing {name}", lineno + 2)))?
                .parse::<f64>()
                .map_err(|e| Error::Schema(format!("line {}: bad {name}: {e}", lineno + 2)))
        };
        let eta = next("eta")?;
        let t = next("t")?;
        let value = next("value")?;
        if eta_axis.last() != Some(&eta) && !eta_axis.contains(&eta) {
            eta_axis.push(eta);
        }
        if !t_axis.contains(&t) {
            t_axis.push(t);
        }
        triples.push((eta, t, value));
    }
    if triples.len() != eta_axis.len() * t_axis.len() {
        return Err(Error::Schema(format!(
            "grid CSV is not rectangular: {} rows for {} x {} axes",
            triples.len(),
            eta_axis.len(),
            t_axis.len()
        )));
    }
    let mut values = vec![f64::NAN; triples.len()];
    for (eta, t, v) in triples {
        let i = eta_axis.iter().position(|&e| e == eta).expect("axis member");
        let j = t_axis.iter().position(|&x| x == t).expect("axis member");
        values[i * t_axis.len() + j] = v;
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::Schema("grid CSV has duplicate or missing cells".into()));
    }
    Ok(PowerSurface {
        eta_axis,
        t_axis,
        metric,
        values,
        marker_t,
        marker_eta,
    })
}

/// Likelihood-profile CSV: `eta,loglik` rows.
pub fn profile_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("eta,loglik\n");
    for &(eta, ll) in points {
        out.push_str(&format!("{eta},{ll}\n"));
    }
    out
}

/// Digest of one input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Reproducibility manifest accompanying every file artifact: the exact
/// invocation, tool version, input digests and seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest {
            tool: "reprostat".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            parameters: BTreeMap::new(),
            inputs: Vec::new(),
            seed: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Record an input file's SHA-256.
    pub fn input(mut self, path: &Path) -> Result<Self, Error> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{digest:x}"),
        });
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    /// Sibling manifest path for an artifact: `<artifact>.manifest.json`.
    pub fn path_for(artifact: &Path) -> PathBuf {
        let mut name = artifact
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "artifact".into());
        name.push_str(".manifest.json");
        artifact.with_file_name(name)
    }

    /// Write an artifact together with its manifest.
    pub fn write_artifact(&self, artifact: &Path, contents: &str) -> Result<(), Error> {
        if let Some(parent) = artifact.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(artifact, contents)?;
        std::fs::write(Self::path_for(artifact), self.to_json())?;
        Ok(())
    }
}
