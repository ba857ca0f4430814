//! Tabular command output, emitted as CSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::number::fmt;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// `#`-prefixed metadata lines, then a header row and data rows.
    Csv,
    /// One JSON object.
    Json,
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    /// Command line that produced the record.
    pub command: String,
    /// Inputs, as text.
    pub params: Vec<(String, String)>,
    /// Scalar results (KS statistics, fitted minimizers, ...).
    pub summary: Vec<(String, f64)>,
    /// Column names.
    pub columns: Vec<String>,
    /// Numeric rows, one value per column.
    pub rows: Vec<Vec<f64>>,
}

impl OutputRecord {
    /// Empty record with the given columns.
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            command: command.into(),
            params: Vec::new(),
            summary: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Adds an input parameter.
    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    /// Adds a scalar result.
    pub fn summarize(&mut self, key: &str, value: f64) -> &mut Self {
        self.summary.push((key.into(), value));
        self
    }

    /// Appends a row; panics if its width is wrong.
    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Column by name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Summary value by name.
    pub fn summary_value(&self, name: &str) -> Option<f64> {
        self.summary
            .iter()
            .find(|(k, _)| k == name)
            .map(|&(_, v)| v)
    }

    /// Writes the record in `format`.
    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())
                    .map_err(std::io::Error::from)?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "# command: {}", self.command)?;
        for (k, v) in &self.params {
            writeln!(out, "# param: {k}={v}")?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# summary: {k}={}", fmt(*v))?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| fmt(v)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON form; numbers are the CSV strings read back, so both agree.
    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), number(*v)))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&v| number(v)).collect()))
            .collect();
        json!({
            "command": self.command,
            "params": params,
            "summary": summary,
            "columns": self.columns,
            "rows": rows,
        })
    }
}

fn number(v: f64) -> Value {
    fmt(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}
