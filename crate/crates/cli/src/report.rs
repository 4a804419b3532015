//! Report formatting, manifests and output files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{write_failed, CliError};

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 <= |x| < 1e12`.
pub fn format_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Run provenance. Everything but the duration is embedded in the report;
/// the sidecar file carries the full record.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: &'static str,
    pub input: Value,
    pub parameters: Value,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_seconds: Option<f64>,
}

impl RunManifest {
    pub fn new(command: &str, input: Value, parameters: Value, seeds: Vec<u64>) -> Self {
        RunManifest {
            command: command.into(),
            tool_version: env!("CARGO_PKG_VERSION"),
            input,
            parameters,
            seeds,
            duration_seconds: None,
        }
    }

    pub fn comment_line(&self) -> String {
        format!("# manifest: {}\n", serde_json::to_string(self).expect("manifest serializes"))
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("manifest serializes")
    }
}

pub fn sidecar_path(output: &Path, suffix: &str) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// Write `body` to `output` (or stdout) and the timed manifest next to it.
pub fn emit(output: Option<&Path>, body: &str, manifest: &RunManifest, elapsed: Duration) -> Result<(), CliError> {
    match output {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| write_failed(Path::new("<stdout>"), e))
        }
        Some(path) => {
            fs::write(path, body).map_err(|e| write_failed(path, e))?;
            let mut timed = manifest.clone();
            timed.duration_seconds = Some(elapsed.as_secs_f64());
            let side = sidecar_path(path, ".manifest.json");
            let text = serde_json::to_string_pretty(&timed).expect("manifest serializes") + "\n";
            fs::write(&side, text).map_err(|e| write_failed(&side, e))
        }
    }
}

/// A table with a header, rendered as CSV or as `{manifest, rows}` JSON.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Text(String),
    Int(usize),
    Number(f64),
    /// A value that does not exist, such as the correlation of a constant vector.
    Undefined,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn csv(&self, manifest: &RunManifest) -> String {
        let mut out = manifest.comment_line();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Int(i) => i.to_string(),
                    Cell::Number(x) => format_g12(*x),
                    Cell::Undefined => "undefined".into(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn json(&self, manifest: &RunManifest) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, c) in self.columns.iter().zip(row) {
                    let v = match c {
                        Cell::Text(s) => json!(s),
                        Cell::Int(i) => json!(i),
                        Cell::Number(x) => json!(x),
                        Cell::Undefined => Value::Null,
                    };
                    obj.insert(name.to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "manifest": manifest.to_value(), "rows": rows });
        serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
    }
}

/// The value column of a CSV or JSON report.
pub fn read_values(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::Input(msg);
    if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON report: {e}")))?;
        let rows = doc["rows"].as_array().ok_or_else(|| bad("JSON report has no `rows` array".into()))?;
        return rows
            .iter()
            .enumerate()
            .map(|(i, r)| r["value"].as_f64().ok_or_else(|| bad(format!("row {i} has no numeric value"))))
            .collect();
    }
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad("report is empty".into()))?;
    if header.rsplit(',').next() != Some("value") {
        return Err(bad(format!("expected a `value` column last, found header `{header}`")));
    }
    lines
        .map(|(i, line)| {
            let field = line.rsplit(',').next().unwrap_or_default();
            field
                .parse::<f64>()
                .map_err(|_| bad(format!("line {}: `{field}` is not a number", i + 1)))
        })
        .collect()
}
