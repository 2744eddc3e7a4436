//! Tabular output rendered as CSV or JSON.
//!
//! CSV: a header row, then data rows; summary values follow as `# key,value`
//! lines. A report without rows prints its summary as a single header/row
//! pair instead. Floats use 17 significant digits.
//!
//! JSON: `{"meta": {...}, <summary keys>, "columns": [...], "rows": [[...]]}`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn with_columns(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn add(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_owned(), value.into()));
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.output_format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(cfg),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.columns.is_empty() {
            let keys: Vec<&str> = self.summary.iter().map(|(k, _)| k.as_str()).collect();
            let values: Vec<String> = self.summary.iter().map(|(_, v)| v.csv()).collect();
            let _ = writeln!(out, "{}", keys.join(","));
            let _ = writeln!(out, "{}", values.join(","));
            return out;
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# {k},{}", v.csv());
        }
        out
    }

    pub fn to_json(&self, cfg: &RunConfig) -> String {
        let mut obj = Map::new();
        obj.insert(
            "meta".into(),
            json!({
                "command": cfg.command.name(),
                "seed": cfg.seed,
                "n": cfg.n,
                "workers": cfg.workers,
                "version": env!("CARGO_PKG_VERSION"),
                "command_line": cfg.command_line.join(" "),
            }),
        );
        for (k, v) in &self.summary {
            obj.insert(k.clone(), v.json());
        }
        if !self.columns.is_empty() {
            obj.insert("columns".into(), json!(self.columns));
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable report");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, 1e-300, -2.5e17] {
            let s = Cell::Float(x).csv();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::with_columns(&["x", "y"]);
        r.push_row(vec![Cell::Float(0.5), Cell::Int(3)]);
        r.add("p", 0.25);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y");
        assert_eq!(lines[1], "5.0000000000000000e-1,3");
        assert_eq!(lines[2], "# p,2.5000000000000000e-1");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn summary_only_csv() {
        let mut r = Report::default();
        r.add("estimate", 1.5);
        r.add("n", 10u64);
        assert_eq!(r.to_csv(), "estimate,n\n1.5000000000000000e0,10\n");
    }
}
