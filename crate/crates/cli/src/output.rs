//! Report rendering. Every number is written with 10 significant digits so
//! identical runs give identical bytes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "recoil-report/1";

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Text(String),
    /// An input or diagnostic number, written without a band.
    Real(f64),
    /// A computed number and its uncertainty band.
    Num(f64, f64),
}

impl Cell {
    pub fn num(value: f64, band: f64) -> Cell {
        Cell::Num(value, band)
    }

    pub fn exact(value: f64) -> Cell {
        Cell::Num(value, 0.0)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: Vec<&'static str>) -> Self {
        Report { command: command.into(), columns, rows: Vec::new(), warnings: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Columns holding [`Cell::Num`], judged from the first row.
    fn measured(&self) -> Vec<usize> {
        match self.rows.first() {
            Some(row) => (0..row.len()).filter(|&i| matches!(row[i], Cell::Num(..))).collect(),
            None => Vec::new(),
        }
    }

    /// Header plus one line per row; band columns follow the value columns.
    pub fn to_csv(&self) -> String {
        let measured = self.measured();
        let mut header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        header.extend(measured.iter().map(|&i| format!("{}_band", self.columns[i])));
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(t) => t.clone(),
                    Cell::Real(v) | Cell::Num(v, _) => sig10(*v),
                })
                .collect();
            fields.extend(measured.iter().map(|&i| match &row[i] {
                Cell::Num(_, b) => sig10(*b),
                _ => String::new(),
            }));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, config: &BTreeMap<&'static str, String>) -> String {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Int(v) => json!(v),
                        Cell::Text(t) => json!(t),
                        Cell::Real(v) => json_number(*v),
                        Cell::Num(v, b) => json!({ "value": json_number(*v), "band": json_number(*b) }),
                    };
                    obj.insert(name.to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": config,
            "results": results,
            "warnings": self.warnings,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
        s.push('\n');
        s
    }
}

fn round10(x: f64) -> f64 {
    format!("{x:.9e}").parse().unwrap_or(x)
}

fn json_number(x: f64) -> Value {
    if x.is_finite() {
        json!(round10(x))
    } else {
        Value::Null
    }
}

/// `x` rounded to 10 significant digits; plain notation for moderate
/// magnitudes, exponent notation otherwise.
pub fn sig10(x: f64) -> String {
    if !x.is_finite() {
        return "nan".into();
    }
    let r = round10(x);
    if r == 0.0 {
        return "0".into();
    }
    if (1e-4..1e10).contains(&r.abs()) {
        format!("{r}")
    } else {
        let s = format!("{r:.9e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}
