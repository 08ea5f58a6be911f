//! Report documents and their JSON and text renderings.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, ScenarioConfig};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: String,
    pub scenario: ScenarioConfig,
    pub group: GroupSummary,
    /// `None` when the bound computations themselves failed.
    pub bounds: Option<BoundsTable>,
    pub spectral_fields: Option<SpectralFields>,
    pub checks: Vec<CheckResult>,
    pub status: Status,
    /// Wall-clock milliseconds; only present when requested, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSummary {
    pub order: usize,
    pub lambda_order: usize,
    pub gamma_order: usize,
    pub critical: bool,
    /// Exact rationals such as `"1/4"`.
    pub weights: Weights,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Weights {
    pub c_g: String,
    pub c_ghat: String,
    pub c_lambda: String,
    pub c_gamma: String,
    pub w_g_mod_lambda: String,
    pub w_ghat_mod_gamma: String,
    pub w_k: String,
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsEntry {
    pub a: f64,
    pub b: f64,
    pub is_frame: bool,
    pub is_parseval: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsTable {
    pub oracle: BoundsEntry,
    pub dual_gramian: BoundsEntry,
    pub zz: BoundsEntry,
    pub frequency: BoundsEntry,
    pub adjoint_riesz: BoundsEntry,
    /// Largest relative deviation from the oracle.
    pub max_deviation: f64,
}

impl BoundsTable {
    fn columns(&self) -> [(&'static str, &BoundsEntry); 5] {
        [
            ("oracle", &self.oracle),
            ("gramian", &self.dual_gramian),
            ("zz", &self.zz),
            ("freq", &self.frequency),
            ("riesz", &self.adjoint_riesz),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralFields {
    pub dual_gramian: FieldSummary,
    pub zz: FieldSummary,
    pub frequency: FieldSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSummary {
    pub p: usize,
    pub q: usize,
    pub fiber_count: usize,
    pub min: f64,
    pub max: f64,
    /// Per-fiber extremes, only with `--dump-fibers`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<FiberExtremes>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberExtremes {
    /// Canonical element indices.
    pub x: usize,
    pub omega: usize,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    /// The residual passes when it is at most this.
    pub threshold: Option<f64>,
    pub detail: String,
}

impl ReportDocument {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Key-sorted, pretty-printed JSON with a trailing newline.
pub fn to_json(doc: &ReportDocument) -> String {
    // serde_json::Value keeps object keys in a BTreeMap.
    let value = serde_json::to_value(doc).expect("reports contain only finite numbers and strings");
    let mut s = serde_json::to_string_pretty(&value).expect("values always serialize");
    s.push('\n');
    s
}

fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-3..1e4).contains(&v.abs()) {
        format!("{v:.6}")
    } else {
        format!("{v:.4e}")
    }
}

pub fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let sc = &doc.scenario;
    let factors: Vec<String> = sc.group.iter().map(|n| format!("Z_{n}")).collect();
    let _ = writeln!(
        out,
        "group {} (order {}), |Lambda| = {}, |Gamma| = {}, p = {}, q = {}{}",
        factors.join(" x "),
        doc.group.order,
        doc.group.lambda_order,
        doc.group.gamma_order,
        doc.group.weights.p,
        doc.group.weights.q,
        if doc.group.critical { ", critical density" } else { "" }
    );
    let _ = writeln!(out, "tolerance {:e}", sc.tolerance);
    let _ = writeln!(out);
    match &doc.bounds {
        Some(t) => {
            let _ = write!(out, "{:<8}", "bounds");
            for (name, _) in t.columns() {
                let _ = write!(out, "{name:>14}");
            }
            let _ = writeln!(out);
            type Cell = fn(&BoundsEntry) -> String;
            let rows: [(&str, Cell); 3] = [
                ("A", |e| fmt_num(e.a)),
                ("B", |e| fmt_num(e.b)),
                ("frame", |e| if e.is_frame { "yes".into() } else { "no".into() }),
            ];
            for (label, cell) in rows {
                let _ = write!(out, "{label:<8}");
                for (_, e) in t.columns() {
                    let _ = write!(out, "{:>14}", cell(e));
                }
                let _ = writeln!(out);
            }
            let _ = writeln!(out, "max relative deviation {:.3e}", t.max_deviation);
        }
        None => {
            let _ = writeln!(out, "bounds unavailable");
        }
    }
    let _ = writeln!(out);
    for c in &doc.checks {
        let residual = c.residual.map_or_else(String::new, |r| format!("{r:.3e}"));
        let _ = writeln!(out, "{:<16}{:<6}{:>12}  {}", c.name, c.status.as_str(), residual, c.detail);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "status: {}", doc.status.as_str());
    out
}

pub fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Text => to_text(doc),
    }
}

/// Writes the rendering to `path`, or to stdout when `path` is `None`.
pub fn emit_report(doc: &ReportDocument, format: Format, path: Option<&Path>) -> std::io::Result<()> {
    let text = render(doc, format);
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

pub fn parse_report(text: &str) -> Result<ReportDocument, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ReportDocument = serde_path_to_error::deserialize(de)
        .map_err(|e| ConfigError::new(e.path().to_string(), e.into_inner().to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(ConfigError::new(
            "schema_version",
            format!("unsupported version {:?}, expected {SCHEMA_VERSION:?}", doc.schema_version),
        ));
    }
    Ok(doc)
}
