//! Input and report documents (JSON).

use std::collections::BTreeMap;

use gdis_core::{CheckReport, Matrix, ModePartition, Ordering, Vector};
use serde::{Deserialize, Serialize};

/// Largest relative asymmetry accepted on ingest.
pub const INGEST_SYMMETRY_TOL: f64 = 1e-9;
/// Asymmetry above this is symmetrized with a warning.
pub const INGEST_SYMMETRY_WARN: f64 = 1e-12;

fn default_hbar() -> f64 {
    1.0
}

/// Covariance-matrix input document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    #[serde(default)]
    pub ordering: OrderingTag,
    #[serde(rename = "n_A")]
    pub n_a: usize,
    #[serde(rename = "n_B")]
    pub n_b: usize,
    pub sigma: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<Vec<f64>>,
}

/// Document carrying a single matrix, e.g. the input of `polar`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    #[serde(default)]
    pub ordering: OrderingTag,
    #[serde(rename = "S")]
    pub s: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingTag {
    #[default]
    Interleaved,
    Blocked,
}

impl From<OrderingTag> for Ordering {
    fn from(tag: OrderingTag) -> Self {
        match tag {
            OrderingTag::Interleaved => Ordering::Interleaved,
            OrderingTag::Blocked => Ordering::Blocked,
        }
    }
}

impl From<Ordering> for OrderingTag {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Interleaved => OrderingTag::Interleaved,
            Ordering::Blocked => OrderingTag::Blocked,
        }
    }
}

pub type Rows = Vec<Vec<f64>>;

pub fn to_rows(m: &Matrix) -> Rows {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

/// Row-major nested array to matrix; `None` for ragged or empty input.
pub fn from_rows(rows: &[Vec<f64>]) -> Option<Matrix> {
    let n = rows.len();
    let m = rows.first()?.len();
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        return None;
    }
    Some(Matrix::from_row_iterator(
        n,
        m,
        rows.iter().flatten().copied(),
    ))
}

pub fn to_vec(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

impl InputDocument {
    pub fn partition(&self) -> Option<ModePartition> {
        ModePartition::new(self.n_a, self.n_b).ok()
    }
}

/// Serialized form of a [`CheckReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub pass: bool,
    pub boundary: bool,
    pub margin: f64,
    pub scale: f64,
    pub tol: f64,
    pub residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&CheckReport> for CheckJson {
    fn from(r: &CheckReport) -> Self {
        CheckJson {
            pass: r.pass,
            boundary: r.on_boundary(),
            margin: r.margin,
            scale: r.scale,
            tol: r.tol,
            residuals: r.residuals.iter().cloned().collect(),
            notes: r.notes.clone(),
        }
    }
}

/// Fields shared by every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub hbar: f64,
    #[serde(rename = "n_A")]
    pub n_a: usize,
    #[serde(rename = "n_B")]
    pub n_b: usize,
    pub verdict: String,
    pub quantum_condition: CheckJson,
    pub symplectic_eigenvalues: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub purity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilliamsonReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub hbar: f64,
    pub ordering: OrderingTag,
    pub symplectic_eigenvalues: Vec<f64>,
    #[serde(rename = "S")]
    pub s: Rows,
    pub residuals: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub ordering: OrderingTag,
    #[serde(rename = "P")]
    pub p: Rows,
    #[serde(rename = "R")]
    pub r: Rows,
    #[serde(rename = "U")]
    pub u: Rows,
    pub lambdas: Vec<f64>,
    pub residuals: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PptJson {
    pub verdict: String,
    pub entangled: bool,
    pub min_symplectic_eigenvalue: f64,
    pub check: CheckJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PptCommandReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub hbar: f64,
    #[serde(rename = "n_A")]
    pub n_a: usize,
    #[serde(rename = "n_B")]
    pub n_b: usize,
    pub ppt: PptJson,
}

/// Full disentangling report. Matrices are given in `ordering`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisentangleReport {
    #[serde(flatten)]
    pub header: ReportHeader,
    pub hbar: f64,
    #[serde(rename = "n_A")]
    pub n_a: usize,
    #[serde(rename = "n_B")]
    pub n_b: usize,
    pub ordering: OrderingTag,
    pub verdict: String,
    pub quantum_condition: CheckJson,
    pub symplectic_eigenvalues: Vec<f64>,
    pub lambdas: Vec<f64>,
    #[serde(rename = "S")]
    pub s: Rows,
    #[serde(rename = "P")]
    pub p: Rows,
    #[serde(rename = "R")]
    pub r: Rows,
    #[serde(rename = "U")]
    pub u: Rows,
    #[serde(rename = "sigma_U")]
    pub sigma_u: Rows,
    #[serde(rename = "sigma_A")]
    pub sigma_a: Rows,
    #[serde(rename = "sigma_B")]
    pub sigma_b: Rows,
    pub werner_wolf: CheckJson,
    pub ppt_input: PptJson,
    pub ppt_rotated: PptJson,
    pub residuals: BTreeMap<String, f64>,
}

/// Renders any report as indented `key: value` text. Numbers are printed
/// with the same shortest round-trip representation as the JSON output.
pub fn render_text(value: &serde_json::Value) -> String {
    let mut out = String::new();
    render_value(value, 0, &mut out);
    out
}

fn render_value(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(v, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_array) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for row in items {
                            out.push_str(&format!("{pad}  {}\n", inline(row)));
                        }
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            render_value(item, indent + 1, out);
                            out.push_str(&format!("{pad}  --\n"));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(v))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(value: &serde_json::Value) -> String {
    use serde_json::Value;
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}
