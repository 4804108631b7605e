//! Text, JSON and CSV rendering of command results.

use clap::ValueEnum;
use serde_json::{Map, Value};
use simplex_stats::exact::rational_to_f64;
use simplex_stats::{Error, Rational, Result};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Shortest form of `x` with at most 15 significant digits; plain notation
/// for exponents in `[-5, 15)`, scientific otherwise.
pub fn decimal(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        trim_zeros(format!("{:.*}", (14 - exp) as usize, x))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// `num/den (decimal)`, or just the integer when the denominator is 1.
pub fn exact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{} ({})", r.numer(), r.denom(), decimal(rational_to_f64(r)))
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    /// Rendered as `num/den (decimal)` in text; in JSON and CSV as a float
    /// under the field name plus the fraction under `<name>_exact`.
    Exact(Rational),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => decimal(*v),
            Cell::Text(s) => s.clone(),
            Cell::Exact(r) => exact(r),
        }
    }

    fn fields(&self, name: &str) -> Vec<(String, Value)> {
        match self {
            Cell::Int(v) => vec![(name.into(), Value::from(*v))],
            Cell::Float(v) => vec![(name.into(), Value::from(*v))],
            Cell::Text(s) => vec![(name.into(), Value::from(s.as_str()))],
            Cell::Exact(r) => vec![
                (name.into(), Value::from(rational_to_f64(r))),
                (format!("{name}_exact"), Value::from(format!("{}/{}", r.numer(), r.denom()))),
            ],
        }
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Serialize(e.to_string())
}

/// A command result: labelled fields, optionally followed by a table.
#[derive(Debug, Default)]
pub struct Report {
    pub fields: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn single(cell: Cell) -> Self {
        Report { fields: vec![("value", cell)], ..Default::default() }
    }

    pub fn fields(fields: Vec<(&'static str, Cell)>) -> Self {
        Report { fields, ..Default::default() }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Text => self.write_text(out),
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_text(&self, out: &mut dyn Write) -> Result<()> {
        if self.columns.is_empty() && self.fields.len() == 1 {
            writeln!(out, "{}", self.fields[0].1.text())?;
            return Ok(());
        }
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 1;
        for (k, v) in &self.fields {
            writeln!(out, "{:<width$} {}", format!("{k}:"), v.text())?;
        }
        if self.columns.is_empty() {
            return Ok(());
        }
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| body.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        if !self.fields.is_empty() {
            writeln!(out)?;
        }
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &body {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    fn json_value(&self) -> Value {
        let mut obj = Map::new();
        for (k, v) in &self.fields {
            obj.extend(v.fields(k));
        }
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().zip(r).flat_map(|(c, v)| v.fields(c)).collect()))
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
        }
        Value::Object(obj)
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "{}", self.json_value())?;
        Ok(())
    }

    /// One CSV row per table row (or a single row without a table), with
    /// the labelled fields repeated as trailing columns.
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let fixed: Vec<(String, Value)> = self.fields.iter().flat_map(|(k, v)| v.fields(k)).collect();
        let rows: Vec<Vec<(String, Value)>> = if self.columns.is_empty() {
            vec![Vec::new()]
        } else {
            self.rows.iter().map(|r| self.columns.iter().zip(r).flat_map(|(c, v)| v.fields(c)).collect()).collect()
        };
        for (i, row) in rows.iter().enumerate() {
            let all: Vec<&(String, Value)> = row.iter().chain(&fixed).collect();
            if i == 0 {
                w.write_record(all.iter().map(|(k, _)| k.as_str())).map_err(csv_error)?;
            }
            w.write_record(all.iter().map(|(_, v)| csv_field(v))).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}
