//! Ingestion of replication-study tables.
//!
//! Input is delimited text with a header row; a small key-value
//! configuration binds record fields to column headers, so the same
//! loader serves differently-labeled exports. Cells that are empty,
//! `NA`, or `NULL` are missing; cells that fail to parse leave the field
//! missing and are reported as row-level warnings rather than aborting
//! the load.

use crate::error::Error;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Category of the key effect a study reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum EffectType {
    MainEffect,
    Interaction,
    Correlation,
    Contrast,
    FocusedInteractionContrast,
    BinomialTest,
    Regression,
    Trend,
}

impl EffectType {
    pub fn parse(s: &str) -> Option<EffectType> {
        match s.trim().to_ascii_lowercase().as_str() {
            "main effect" => Some(EffectType::MainEffect),
            "interaction" => Some(EffectType::Interaction),
            "correlation" => Some(EffectType::Correlation),
            "contrast" => Some(EffectType::Contrast),
            "focused interaction contrast" => Some(EffectType::FocusedInteractionContrast),
            "binomial test" => Some(EffectType::BinomialTest),
            "regression" => Some(EffectType::Regression),
            "trend" => Some(EffectType::Trend),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EffectType::MainEffect => "main effect",
            EffectType::Interaction => "interaction",
            EffectType::Correlation => "correlation",
            EffectType::Contrast => "contrast",
            EffectType::FocusedInteractionContrast => "focused interaction contrast",
            EffectType::BinomialTest => "binomial test",
            EffectType::Regression => "regression",
            EffectType::Trend => "trend",
        }
    }
}

impl fmt::Display for EffectType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One original/replication study pair; absent data stays absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRecord {
    pub id: String,
    pub n_original: Option<u64>,
    pub n_replication: Option<u64>,
    pub effect_type: Option<EffectType>,
    pub replication_power: Option<f64>,
    pub p_original: Option<f64>,
    pub sig_original: Option<bool>,
    pub sig_replication: Option<bool>,
}

impl StudyRecord {
    pub fn empty(id: String) -> Self {
        StudyRecord {
            id,
            n_original: None,
            n_replication: None,
            effect_type: None,
            replication_power: None,
            p_original: None,
            sig_original: None,
            sig_replication: None,
        }
    }
}

/// Record fields a column can bind to.
pub const FIELD_NAMES: [&str; 8] = [
    "id",
    "n_original",
    "n_replication",
    "effect_type",
    "replication_power",
    "p_original",
    "sig_original",
    "sig_replication",
];

/// Binding of record fields to column headers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnMap {
    bindings: BTreeMap<String, String>,
}

impl ColumnMap {
    pub fn empty() -> Self {
        ColumnMap {
            bindings: BTreeMap::new(),
        }
    }

    /// Parse the key-value configuration format: one `field = header`
    /// per line, `#` comments, blank lines ignored.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut bindings = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected `field = header`, got {raw:?}",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if !FIELD_NAMES.contains(&key) {
                return Err(Error::Config(format!(
                    "line {}: unknown field {key:?} (expected one of {})",
                    lineno + 1,
                    FIELD_NAMES.join(", ")
                )));
            }
            if value.is_empty() {
                return Err(Error::Config(format!(
                    "line {}: empty header for field {key:?}",
                    lineno + 1
                )));
            }
            if bindings.insert(key.to_string(), value.to_string()).is_some() {
                return Err(Error::Config(format!(
                    "line {}: field {key:?} bound twice",
                    lineno + 1
                )));
            }
        }
        Ok(ColumnMap { bindings })
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        ColumnMap::parse(&std::fs::read_to_string(path)?)
    }

    pub fn bind(mut self, field: &str, header: &str) -> Self {
        self.bindings.insert(field.into(), header.into());
        self
    }

    pub fn header_for(&self, field: &str) -> Option<&str> {
        self.bindings.get(field).map(|s| s.as_str())
    }

    /// Binding for the seven-column table of the psychology replication
    /// export (headers as the analysis spreadsheet names them).
    pub fn osc_default() -> Self {
        ColumnMap::empty()
            .bind("n_original", "N (O)")
            .bind("n_replication", "N (R)")
            .bind("effect_type", "Type of effect (O)")
            .bind("replication_power", "Power (R)")
            .bind("p_original", "T_pval_USE..O.")
            .bind("sig_original", "T_sign_O")
            .bind("sig_replication", "T_sign_R")
    }

    /// Binding for the bundled economics replication table.
    pub fn eco_default() -> Self {
        ColumnMap::empty()
            .bind("id", "id")
            .bind("p_original", "p_original")
            .bind("replication_power", "replication_power")
            .bind("sig_original", "sig_original")
            .bind("sig_replication", "sig_replication")
    }
}

/// Loaded records plus non-fatal row-level warnings.
#[derive(Debug, Clone)]
pub struct LoadReport {
    pub records: Vec<StudyRecord>,
    pub warnings: Vec<String>,
}

fn is_missing(cell: &str) -> bool {
    let c = cell.trim();
    c.is_empty() || c.eq_ignore_ascii_case("na") || c.eq_ignore_ascii_case("null")
}

fn parse_flag(cell: &str) -> Option<bool> {
    match cell.trim().to_ascii_lowercase().as_str() {
        "true" | "t" | "yes" => Some(true),
        "false" | "f" | "no" => Some(false),
        other => other.parse::<f64>().ok().map(|v| v != 0.0),
    }
}

/// Load study records from a delimited file under a column map.
///
/// Every bound header must be present (a missing one is a schema error
/// naming it); unbound fields stay missing on every record.
pub fn load_studies(path: &Path, map: &ColumnMap) -> Result<LoadReport, Error> {
    let file = std::fs::File::open(path).map_err(|e| {
        Error::Schema(format!("cannot open {}: {e}", path.display()))
    })?;
    load_studies_from_reader(file, map)
}

/// As [`load_studies`], from any reader (used by the fuzz harness).
pub fn load_studies_from_reader<R: std::io::Read>(
    reader: R,
    map: &ColumnMap,
) -> Result<LoadReport, Error> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);

    let headers = rdr.headers()?.clone();
    let index_of = |header: &str| headers.iter().position(|h| h == header);

    // resolve bound fields to column indices; absent headers are fatal
    let mut indices: BTreeMap<&str, usize> = BTreeMap::new();
    let mut absent: Vec<&str> = Vec::new();
    for field in FIELD_NAMES {
        if let Some(header) = map.header_for(field) {
            match index_of(header) {
                Some(i) => {
                    indices.insert(field, i);
                }
                None => absent.push(header),
            }
        }
    }
    if !absent.is_empty() {
        return Err(Error::Schema(format!(
            "missing mapped column(s): {}",
            absent
                .iter()
                .map(|h| format!("{h:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }

    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (row_idx, row) in rdr.records().enumerate() {
        let row = row?;
        let rowno = row_idx + 1;
        let cell = |field: &str| -> Option<&str> {
            indices
                .get(field)
                .and_then(|&i| row.get(i))
                .filter(|c| !is_missing(c))
        };
        let id = cell("id")
            .map(|c| c.trim().to_string())
            .unwrap_or_else(|| format!("{rowno:04}"));
        let mut rec = StudyRecord::empty(id);

        let mut parse_f64 = |field: &str| -> Option<f64> {
            let c = cell(field)?;
            match c.trim().parse::<f64>() {
                Ok(v) => Some(v),
                Err(_) => {
                    warnings.push(format!("row {rowno}: unparseable {field} value {c:?}"));
                    None
                }
            }
        };
        rec.replication_power = parse_f64("replication_power");
        rec.p_original = parse_f64("p_original");
        rec.n_original = parse_f64("n_original").map(|v| v.max(0.0) as u64);
        rec.n_replication = parse_f64("n_replication").map(|v| v.max(0.0) as u64);

        if let Some(c) = cell("effect_type") {
            match EffectType::parse(c) {
                Some(e) => rec.effect_type = Some(e),
                None => warnings.push(format!("row {rowno}: unknown effect type {c:?}")),
            }
        }
        for (field, slot) in [
            ("sig_original", &mut rec.sig_original),
            ("sig_replication", &mut rec.sig_replication),
        ] {
            if let Some(c) = cell(field) {
                match parse_flag(c) {
                    Some(v) => *slot = Some(v),
                    None => warnings.push(format!("row {rowno}: unparseable {field} value {c:?}")),
                }
            }
        }
        records.push(rec);
    }
    Ok(LoadReport { records, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_path() -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../data/osc_fixture.csv")
    }

    #[test]
    fn fixture_round_trip() {
        let report = load_studies(&fixture_path(), &ColumnMap::osc_default()).unwrap();
        assert_eq!(report.records.len(), 3);
        assert!(report.warnings.is_empty());

        let r = &report.records[0];
        assert_eq!(r.id, "0001");
        assert_eq!(r.n_original, Some(50));
        assert_eq!(r.n_replication, Some(60));
        assert_eq!(r.effect_type, Some(EffectType::MainEffect));
        assert_eq!(r.replication_power, Some(0.95));
        assert_eq!(r.p_original, Some(0.021));
        assert_eq!(r.sig_original, Some(true));
        assert_eq!(r.sig_replication, Some(false));

        let r = &report.records[1];
        assert_eq!(r.effect_type, Some(EffectType::Interaction));
        assert_eq!(r.p_original, Some(0.0003));
        assert_eq!(r.sig_replication, Some(true));

        // third row has missing replication sample size and power
        let r = &report.records[2];
        assert_eq!(r.n_replication, None);
        assert_eq!(r.replication_power, None);
        assert_eq!(r.effect_type, Some(EffectType::Correlation));
    }

    #[test]
    fn missing_mapped_column_is_schema_error() {
        let csv = "N (O),T_pval_USE..O.,T_sign_O,T_sign_R\n10,0.01,1,0\n";
        let err = load_studies_from_reader(csv.as_bytes(), &ColumnMap::osc_default());
        match err {
            Err(Error::Schema(msg)) => {
                assert!(msg.contains("Power (R)"), "message was: {msg}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn unparseable_cells_warn_and_stay_missing() {
        let csv = "id,p_original,replication_power,sig_original,sig_replication\n\
                   a,0.5x,0.9,1,0\n\
                   b,0.01,oops,maybe,1\n";
        let report = load_studies_from_reader(csv.as_bytes(), &ColumnMap::eco_default()).unwrap();
        assert_eq!(report.records.len(), 2);
        assert_eq!(report.records[0].p_original, None);
        assert_eq!(report.records[1].replication_power, None);
        assert_eq!(report.records[1].sig_original, None);
        assert_eq!(report.warnings.len(), 3);
    }

    #[test]
    fn na_cells_are_missing_without_warnings() {
        let csv = "id,p_original,replication_power,sig_original,sig_replication\n\
                   a,NA,0.9,1,\n";
        let report = load_studies_from_reader(csv.as_bytes(), &ColumnMap::eco_default()).unwrap();
        assert_eq!(report.records[0].p_original, None);
        assert_eq!(report.records[0].sig_replication, None);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn column_map_parser() {
        let text = "# comment\n  p_original = P value \n sig_original=sig\n";
        let map = ColumnMap::parse(text).unwrap();
        assert_eq!(map.header_for("p_original"), Some("P value"));
        assert_eq!(map.header_for("sig_original"), Some("sig"));
        assert_eq!(map.header_for("id"), None);

        assert!(ColumnMap::parse("nonsense_field = X").is_err());
        assert!(ColumnMap::parse("p_original X").is_err());
        assert!(ColumnMap::parse("p_original =").is_err());
        assert!(ColumnMap::parse("p_original = A\np_original = B").is_err());
    }

    #[test]
    fn short_rows_leave_fields_missing() {
        let csv = "id,p_original,replication_power,sig_original,sig_replication\na,0.03\n";
        let report = load_studies_from_reader(csv.as_bytes(), &ColumnMap::eco_default()).unwrap();
        assert_eq!(report.records[0].p_original, Some(0.03));
        assert_eq!(report.records[0].sig_replication, None);
    }
}
