//! Tabular results, run manifests and atomic file output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;

pub const OUT_DIR_ENV: &str = "IHPULSE_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Num(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: Vec<String>) -> Self {
        Self {
            name,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.into_inner().context("flushing CSV buffer")
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub parameters: Value,
    pub tool_version: &'static str,
    pub preset: Option<String>,
    pub configs: Value,
    pub timestamp: String,
}

impl Manifest {
    pub fn new(command: &str, parameters: Value, preset: Option<&Path>, configs: Value) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION"),
            preset: preset.map(|p| p.display().to_string()),
            configs,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

pub struct Report {
    pub manifest: Manifest,
    /// The first table is the primary one.
    pub tables: Vec<Table>,
}

/// Resolves the output base path (without extension).
pub fn output_base(out: Option<&Path>, command: &str) -> PathBuf {
    let base = out.map_or_else(|| PathBuf::from(command), Path::to_path_buf);
    let base = match base.extension().and_then(|e| e.to_str()) {
        Some("csv" | "json") => base.with_extension(""),
        _ => base,
    };
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if base.is_relative() => PathBuf::from(dir).join(base),
        _ => base,
    }
}

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut name = base.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    base.with_file_name(name)
}

/// Writes `bytes` to a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

impl Report {
    fn data_json(&self) -> Value {
        Value::Object(
            self.tables
                .iter()
                .map(|t| (t.name.to_string(), t.to_json()))
                .collect(),
        )
    }

    /// Writes the report and returns the paths created.
    pub fn write(&self, base: &Path, format: Format) -> Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        let manifest = serde_json::to_value(&self.manifest)?;
        if matches!(format, Format::Json | Format::Both) {
            let doc = json!({ "manifest": manifest, "data": self.data_json() });
            let path = with_suffix(base, ".json");
            write_atomic(&path, &serde_json::to_vec_pretty(&doc)?)?;
            written.push(path);
        }
        if matches!(format, Format::Csv | Format::Both) {
            for (i, table) in self.tables.iter().enumerate() {
                let suffix = if i == 0 {
                    ".csv".to_string()
                } else {
                    format!(".{}.csv", table.name)
                };
                let path = with_suffix(base, &suffix);
                write_atomic(&path, &table.to_csv()?)?;
                written.push(path);
            }
            let path = with_suffix(base, ".manifest.json");
            write_atomic(&path, &serde_json::to_vec_pretty(&manifest)?)?;
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_and_formats_numbers() {
        let mut t = Table::new("t", vec!["a".into(), "b,c".into()]);
        t.push(vec![Cell::Num(0.5), Cell::Text("x\"y".into())]);
        t.push(vec![Cell::Empty, Cell::Bool(true)]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(
            s,
            "a,\"b,c\"\r\n5.0000000000000000e-1,\"x\"\"y\"\r\n,true\r\n"
        );
    }

    #[test]
    fn scientific_format_round_trips() {
        for v in [1.0 / 3.0, 9.36e-9, -2.5e300, 0.0] {
            assert_eq!(Cell::Num(v).csv().parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn extension_is_replaced() {
        std::env::remove_var(OUT_DIR_ENV);
        assert_eq!(
            output_base(Some(Path::new("a/b.csv")), "x"),
            PathBuf::from("a/b")
        );
        assert_eq!(output_base(None, "eye"), PathBuf::from("eye"));
        assert_eq!(
            with_suffix(Path::new("a/b"), ".manifest.json"),
            PathBuf::from("a/b.manifest.json")
        );
    }

    #[test]
    fn writes_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = Table::new("main", vec!["x".into()]);
        t.push(vec![Cell::Num(1.0)]);
        let extra = Table::new("extra", vec!["y".into()]);
        let report = Report {
            manifest: Manifest::new("test", json!({}), None, json!({})),
            tables: vec![t, extra],
        };
        let files = report.write(&dir.path().join("r"), Format::Both).unwrap();
        let names: Vec<_> = files
            .iter()
            .map(|p| p.file_name().unwrap().to_str().unwrap().to_string())
            .collect();
        assert_eq!(names, ["r.json", "r.csv", "r.extra.csv", "r.manifest.json"]);
        let doc: Value = serde_json::from_slice(&fs::read(&files[0]).unwrap()).unwrap();
        assert_eq!(doc["data"]["main"]["rows"][0][0], json!(1.0));
        assert_eq!(doc["manifest"]["command"], json!("test"));
    }
}
