//! Tables, records and the files they are written to.
//!
//! Tables are comma-separated with a header row, or JSON objects with a
//! `columns` list and one object per row. Records are always JSON. Every
//! run ends with `manifest.json`, which lists each emitted file with its
//! SHA-256 digest. Nothing time-dependent is written, so identical inputs
//! give byte-identical outputs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// Comma-separated tables with a header row.
    #[default]
    #[value(alias = "delimited-table")]
    Csv,
    /// Tables as JSON records.
    #[value(alias = "serialized-records")]
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(i64::from(x))
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Plain decimal inside [1e-3, 1e6], exponent notation outside. Both use
/// the shortest representation that round-trips.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let m = x.abs();
    if x == 0.0 {
        "0".into()
    } else if (1e-3..=1e6).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => csv_field(s),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Self {
        Self { name: name.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.headers.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.rows {
            let line = row.iter().map(Cell::csv).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (h, c) in self.headers.iter().zip(r) {
                    m.insert(h.clone(), c.json());
                }
                Value::Object(m)
            })
            .collect();
        json!({ "columns": self.headers, "rows": rows })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Table(Table),
    Record { name: String, value: Value },
}

impl Artifact {
    pub fn record(name: &str, value: impl Serialize) -> Self {
        Artifact::Record { name: name.into(), value: serde_json::to_value(value).unwrap_or(Value::Null) }
    }
}

/// Pretty JSON with non-finite numbers already mapped to null.
fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Collects emitted files under one output directory.
pub struct Writer {
    root: PathBuf,
    format: Format,
    entries: Vec<ManifestEntry>,
}

impl Writer {
    pub fn new(root: &Path, format: Format) -> Self {
        Self { root: root.to_path_buf(), format, entries: Vec::new() }
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    fn write_file(&mut self, rel: &str, contents: &str) -> CliResult<()> {
        let path = self.root.join(rel);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(CliError::io(dir.display().to_string()))?;
        }
        fs::write(&path, contents).map_err(CliError::io(path.display().to_string()))?;
        let digest = Sha256::digest(contents.as_bytes());
        self.entries.push(ManifestEntry { path: rel.to_string(), sha256: hex::encode(digest), bytes: contents.len() });
        Ok(())
    }

    /// Write artifacts, optionally into a subdirectory of the root.
    pub fn emit(&mut self, subdir: Option<&str>, artifacts: &[Artifact]) -> CliResult<()> {
        let prefix = subdir.map(|d| format!("{d}/")).unwrap_or_default();
        for a in artifacts {
            match a {
                Artifact::Table(t) => match self.format {
                    Format::Csv => self.write_file(&format!("{prefix}{}.csv", t.name), &t.to_csv())?,
                    Format::Json => self.write_file(&format!("{prefix}{}.json", t.name), &json_text(&t.to_json()))?,
                },
                Artifact::Record { name, value } => {
                    self.write_file(&format!("{prefix}{name}.json"), &json_text(value))?
                }
            }
        }
        Ok(())
    }

    /// Write `manifest.json` listing every file emitted so far.
    pub fn finish(mut self, command: &str) -> CliResult<Vec<ManifestEntry>> {
        self.entries.sort_by(|a, b| a.path.cmp(&b.path));
        let manifest = json!({
            "generator": format!("hhsim {}", env!("CARGO_PKG_VERSION")),
            "command": command,
            "format": self.format,
            "files": self.entries,
        });
        let path = self.root.join("manifest.json");
        fs::create_dir_all(&self.root).map_err(CliError::io(self.root.display().to_string()))?;
        fs::write(&path, json_text(&manifest)).map_err(CliError::io(path.display().to_string()))?;
        Ok(self.entries)
    }
}
