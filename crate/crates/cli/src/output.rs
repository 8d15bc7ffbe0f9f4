//! Table output in CSV or JSON-lines form, written atomically.
//!
//! CSV files start with `#`-prefixed header comment lines (run metadata and
//! what the numbers measure), then the column header, then the rows. JSONL
//! files carry the rows only, one object per line with the same field
//! names. Numbers are formatted with Rust's shortest round-trip notation,
//! so identical runs produce byte-identical files.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};

/// One table cell; keeps the native type so JSONL rows stay typed.
#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    U64(u64),
    F64(f64),
    /// Missing value: empty in CSV, null in JSONL.
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => csv_escape(s),
            Cell::U64(v) => v.to_string(),
            Cell::F64(v) => format!("{v}"),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Str(s) => serde_json::Value::String(s.clone()),
            Cell::U64(v) => serde_json::Value::from(*v),
            Cell::F64(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::Null => serde_json::Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::U64(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::U64(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::U64(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F64(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

/// Quotes a field when it contains a separator, quote, or newline
/// (problem spellings carry commas).
pub fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Splits one CSV line into fields, honoring double-quote escaping.
pub fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                chars.next();
                cur.push('"');
            }
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Csv => write!(f, "csv"),
            Format::Jsonl => write!(f, "jsonl"),
        }
    }
}

/// A results table ready to serialize.
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Table {
            comments: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    /// Appends the timestamp header unless suppressed for reproducible
    /// output comparison.
    pub fn timestamp(&mut self, suppress: bool) {
        if !suppress {
            let now = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            self.comments.push(format!("generated-unix: {now}"));
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                for c in &self.comments {
                    out.push_str("# ");
                    out.push_str(c);
                    out.push('\n');
                }
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&line.join(","));
                    out.push('\n');
                }
            }
            Format::Jsonl => {
                for row in &self.rows {
                    let obj: serde_json::Map<String, serde_json::Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| (c.to_string(), cell.json()))
                        .collect();
                    out.push_str(&serde_json::Value::Object(obj).to_string());
                    out.push('\n');
                }
            }
        }
        out
    }

    /// Writes the rendered table atomically: a temp file in the target
    /// directory, flushed, then renamed into place.
    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        let parent = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => std::env::current_dir().context("resolving output directory")?,
        };
        std::fs::create_dir_all(&parent)
            .with_context(|| format!("creating output directory {}", parent.display()))?;
        let mut tmp = tempfile::Builder::new()
            .prefix(".randcube-")
            .tempfile_in(&parent)
            .context("creating temporary output file")?;
        tmp.write_all(self.render(format).as_bytes())
            .context("writing output")?;
        tmp.flush()?;
        tmp.persist(path)
            .with_context(|| format!("renaming into {}", path.display()))?;
        Ok(())
    }
}
