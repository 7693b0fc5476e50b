//! CSV and JSON writers and readers.
//!
//! CSV carries only the header `k,t,<components>` and the rows, every value in
//! 17-significant-digit scientific notation. JSON is
//! `{"metadata": …, "columns": […], "rows": [[…], …]}` with shortest
//! round-trip numbers. Non-finite values (an infinite `tau`) are written as
//! `inf`/`-inf`/`NaN` in CSV and as the same strings in JSON. Both forms
//! re-read bit-exactly.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{Result, ScanError};
use crate::scan::{Metadata, ScanResult};

/// 17 significant digits in scientific notation.
pub fn format_csv_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(result: &ScanResult, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&result.columns)?;
    for row in &result.rows {
        w.write_record(row.iter().map(|&x| format_csv_value(x)))?;
    }
    w.flush()?;
    Ok(())
}

/// Header and rows of a CSV export.
pub fn read_csv<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_reader(input);
    let columns: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| ScanError::Malformed(format!("bad number `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((columns, rows))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Number(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Number(x)
        } else {
            Cell::Text(x.to_string())
        }
    }
}

impl TryFrom<Cell> for f64 {
    type Error = ScanError;

    fn try_from(c: Cell) -> Result<f64> {
        match c {
            Cell::Number(x) => Ok(x),
            Cell::Text(s) => s.parse().map_err(|_| ScanError::Malformed(format!("bad number `{s}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    metadata: Metadata,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

pub fn write_json<W: Write>(result: &ScanResult, mut out: W) -> Result<()> {
    let doc = JsonDoc {
        metadata: result.metadata.clone(),
        columns: result.columns.clone(),
        rows: result.rows.iter().map(|r| r.iter().map(|&x| Cell::from(x)).collect()).collect(),
    };
    serde_json::to_writer(&mut out, &doc)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<ScanResult> {
    let doc: JsonDoc = serde_json::from_reader(input)?;
    let rows = doc
        .rows
        .into_iter()
        .map(|r| r.into_iter().map(f64::try_from).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult { metadata: doc.metadata, columns: doc.columns, rows })
}

pub fn write<W: Write>(result: &ScanResult, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(result, out),
        Format::Json => write_json(result, out),
    }
}

pub fn export(result: &ScanResult, path: &Path, format: Format) -> Result<()> {
    write(result, format, BufWriter::new(File::create(path)?))
}

pub fn import_json(path: &Path) -> Result<ScanResult> {
    read_json(BufReader::new(File::open(path)?))
}

pub fn import_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    read_csv(BufReader::new(File::open(path)?))
}
