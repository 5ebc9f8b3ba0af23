use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Rows for the csv and table formats.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Table {
        Table { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn row<S: ToString>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    /// Two-column table of a JSON object's top-level fields.
    pub fn fields(value: &Value) -> Table {
        let mut t = Table::new(["field", "value"]);
        if let Value::Object(map) = value {
            for (k, v) in map {
                t.row([k.clone(), cell(v)]);
            }
        }
        t
    }

    fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(&self.headers))?;
        writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
        for r in &self.rows {
            writeln!(out, "{}", line(r))?;
        }
        Ok(())
    }

    fn write_csv(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Compact text for a JSON value inside a table cell.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A command result: the JSON payload plus its tabular view.
pub struct Output {
    pub json: Value,
    pub table: Table,
}

impl Output {
    pub fn new(data: &impl Serialize, table: Table) -> Result<Output, CliError> {
        Ok(Output { json: serde_json::to_value(data)?, table })
    }

    /// Uses the top-level fields of `data` as the table.
    pub fn fields(data: &impl Serialize) -> Result<Output, CliError> {
        let json = serde_json::to_value(data)?;
        let table = Table::fields(&json);
        Ok(Output { json, table })
    }

    pub fn write(&self, format: Format, mut out: impl Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => self.table.write_csv(out)?,
            Format::Table => self.table.write_text(&mut out)?,
        }
        Ok(())
    }
}
