//! Result tables and their CSV / JSON encodings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::Format;
use super::HarnessError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Json(Value),
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Json(v) => v.to_string(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Float(x) => Some(*x),
            _ => None,
        }
    }
}

/// Scientific notation with 17 significant digits, which round-trips every
/// double exactly.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
}

impl Provenance {
    pub fn new(config_sha256: String) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_sha256,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self { provenance: None, columns, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

pub fn emit_table(t: &ResultTable, format: Format) -> Result<Vec<u8>, HarnessError> {
    if let Some(bad) = t.rows.iter().find(|r| r.len() != t.columns.len()) {
        return Err(HarnessError::Internal(format!(
            "row of {} cells under {} columns",
            bad.len(),
            t.columns.len()
        )));
    }
    match format {
        Format::Csv => {
            let mut out = Vec::new();
            if let Some(p) = &t.provenance {
                out.extend_from_slice(format!("# {} {}\n# config-sha256 {}\n", p.tool, p.version, p.config_sha256).as_bytes());
            }
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            let io = |e: csv::Error| HarnessError::Io(e.to_string());
            w.write_record(&t.columns).map_err(io)?;
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::csv_field)).map_err(io)?;
            }
            w.into_inner().map_err(|e| HarnessError::Io(e.to_string()))
        }
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(t).map_err(|e| HarnessError::Internal(e.to_string()))?;
            v.push(b'\n');
            Ok(v)
        }
    }
}
