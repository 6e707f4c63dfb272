//! Tabular output in CSV, JSON or Markdown.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    /// A value printed with a fixed number of decimals.
    Num(f64, usize),
    Int(u64),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x, d) => format!("{x:.d$}", d = *d),
            Cell::Int(n) => n.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            // round-trip the printed digits so JSON and text agree
            Cell::Num(x, d) => self.text().parse::<f64>().map(|v| json!(v)).unwrap_or_else(|_| json!(format!("{x:.d$}", d = *d))),
            Cell::Int(n) => json!(n),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: String,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("writing to memory");
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::text)).expect("writing to memory");
                }
                String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
            }
            Format::Json => {
                let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({ "title": self.title, "meta": meta, "columns": self.columns, "rows": rows });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializing a JSON value");
                s.push('\n');
                s
            }
            Format::Markdown => {
                let mut s = String::new();
                writeln!(s, "## {}\n", self.title).unwrap();
                for (k, v) in &self.meta {
                    writeln!(s, "- {k}: {v}").unwrap();
                }
                if !self.meta.is_empty() {
                    s.push('\n');
                }
                writeln!(s, "| {} |", self.columns.join(" | ")).unwrap();
                writeln!(s, "|{}", "---|".repeat(self.columns.len())).unwrap();
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::text).collect();
                    writeln!(s, "| {} |", cells.join(" | ")).unwrap();
                }
                s
            }
        }
    }
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
