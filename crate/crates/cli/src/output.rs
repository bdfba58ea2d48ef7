//! Tables rendered as CSV (`#` comments, `{:.16e}` numbers), JSON or aligned
//! text.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => u8::from(*b).to_string(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format!("{x:.12e}"),
            Cell::Num(x) => x.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

/// 17 significant digits, fixed layout so identical inputs give identical bytes.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// One record: a JSON object.
    Record,
    /// A JSON array of objects.
    Rows,
    /// One JSON object per line.
    Lines,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub shape: Shape,
    /// Extra lines appended to the pretty rendering only.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(shape: Shape, columns: &[&'static str]) -> Self {
        Table {
            comments: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            shape,
            notes: Vec::new(),
        }
    }

    pub fn comment(mut self, c: impl Into<String>) -> Self {
        self.comments.push(c.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn csv(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            s.push_str("# ");
            s.push_str(c);
            s.push('\n');
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn object(&self, row: &[Cell]) -> Value {
        let mut m = Map::new();
        for (k, v) in self.columns.iter().zip(row) {
            m.insert((*k).to_string(), v.json());
        }
        Value::Object(m)
    }

    pub fn json(&self) -> String {
        match self.shape {
            Shape::Record if self.rows.len() == 1 => {
                let mut s = serde_json::to_string_pretty(&self.object(&self.rows[0])).unwrap();
                s.push('\n');
                s
            }
            Shape::Lines => {
                let mut s = String::new();
                for r in &self.rows {
                    s.push_str(&self.object(r).to_string());
                    s.push('\n');
                }
                s
            }
            _ => {
                let arr: Vec<Value> = self.rows.iter().map(|r| self.object(r)).collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(arr)).unwrap();
                s.push('\n');
                s
            }
        }
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        if self.shape == Shape::Record && self.rows.len() == 1 {
            let w = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (k, v) in self.columns.iter().zip(&self.rows[0]) {
                s.push_str(&format!("{k:>w$}  {}\n", v.pretty()));
            }
        } else {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::pretty).collect())
                .collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].len())
                        .chain([self.columns[j].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: Vec<&str>| -> String {
                let parts: Vec<String> = items
                    .iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}"))
                    .collect();
                parts.join("  ") + "\n"
            };
            s.push_str(&line(self.columns.clone()));
            for r in &cells {
                s.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
        for n in &self.notes {
            s.push_str(n);
            s.push('\n');
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Pretty => self.pretty(),
        }
    }
}

pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
