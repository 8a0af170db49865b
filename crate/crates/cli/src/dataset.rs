use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(&'static str),
    Missing,
}

impl Cell {
    /// CSV text; floats use 17 significant digits so they read back exactly.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => (*v).to_string(),
            Cell::Missing => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::Missing => Value::Null,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            _ => None,
        }
    }
}

/// Provenance written into every dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct Metadata {
    pub dataset: String,
    /// Extra `key=value` pairs, in output order.
    pub fields: Vec<(String, String)>,
}

impl Metadata {
    pub fn new(dataset: impl Into<String>) -> Self {
        Self {
            dataset: dataset.into(),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn comment_line(&self) -> String {
        let mut parts = vec![format!("tool={}", crate::TOOL), format!("dataset={}", self.dataset)];
        parts.extend(self.fields.iter().map(|(k, v)| format!("{k}={v}")));
        format!("# {}", parts.join(", "))
    }
}

/// A table of named columns plus its metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub meta: Metadata,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Dataset {
    pub fn new(meta: Metadata, columns: Vec<&'static str>) -> Self {
        Self {
            meta,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.meta.comment_line())?;
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()
    }

    /// `{"meta": {...}, "columns": [...], "rows": [[...], ...]}`.
    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut meta = serde_json::Map::new();
        meta.insert("tool".into(), json!(crate::TOOL));
        meta.insert("dataset".into(), json!(self.meta.dataset));
        for (k, v) in &self.meta.fields {
            meta.insert(k.clone(), json!(v));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({ "meta": meta, "columns": self.columns, "rows": rows });
        serde_json::to_writer(&mut w, &doc)?;
        writeln!(w)?;
        w.flush()
    }

    pub fn write(&self, format: Format, w: impl Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    pub fn write_to_path(&self, format: Format, path: &Path) -> Result<(), CliError> {
        let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        self.write(format, BufWriter::new(file)).map_err(|e| CliError::io(path, e))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}

/// A CSV file read back as text cells.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTable {
    pub comment: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedTable {
    /// Parses the layout written by [`Dataset::write_csv`]. Cells never contain
    /// commas or quotes, so a plain split is enough.
    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let comment = lines.next().ok_or("empty file")?;
        let comment = comment.strip_prefix("# ").ok_or("missing metadata comment line")?.to_string();
        let header = lines.next().ok_or("missing header line")?;
        let columns: Vec<String> = header.split(',').map(String::from).collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row: Vec<String> = line.split(',').map(String::from).collect();
            if row.len() != columns.len() {
                return Err(format!("row {i} has {} fields, header has {}", row.len(), columns.len()));
            }
            rows.push(row);
        }
        Ok(Self { comment, columns, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    /// Value of `key=value` in the metadata comment.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.comment.split(", ").find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
    }
}
