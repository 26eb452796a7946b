use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Writes records with a fixed set of columns, either as CSV with a header
/// or as one JSON object per line.
pub struct RecordWriter {
    out: Box<dyn Write>,
    format: Format,
    columns: &'static [&'static str],
    header_done: bool,
}

impl RecordWriter {
    pub fn new(format: Format, path: Option<&Path>, columns: &'static [&'static str]) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(RecordWriter { out, format, columns, header_done: false })
    }

    /// `fields` must line up with the column list. `Value::Null` becomes an
    /// empty CSV cell and is kept as `null` in JSON.
    pub fn write(&mut self, fields: Vec<Value>) -> io::Result<()> {
        debug_assert_eq!(fields.len(), self.columns.len());
        match self.format {
            Format::Csv => {
                if !self.header_done {
                    writeln!(self.out, "{}", self.columns.join(","))?;
                    self.header_done = true;
                }
                let cells: Vec<String> = fields.iter().map(csv_cell).collect();
                writeln!(self.out, "{}", cells.join(","))
            }
            Format::Jsonl => {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(fields)
                    .collect();
                writeln!(self.out, "{}", Value::Object(obj))
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        if self.format == Format::Csv && !self.header_done {
            writeln!(self.out, "{}", self.columns.join(","))?;
        }
        self.out.flush()
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::Null => return String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

impl RecordWriter {
    /// Writes one pre-built JSON line, bypassing the column list.
    pub fn write_json(&mut self, v: &Value) -> io::Result<()> {
        writeln!(self.out, "{v}")
    }

    pub fn format(&self) -> Format {
        self.format
    }
}
