//! File formats: metric JSON input, table and scan output.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::deformation::BilinearForm;
use crate::error::{Error, Result};
use crate::experiments::dim2::ScanRecord;
use crate::scalar::{parse_rational, Rational};
use crate::structure::{StructureTables, TablesDocument};

/// `{"dim": n, "entries": [[…], …]}`. Entries may be JSON numbers or
/// strings holding `"p/q"` or decimal literals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricFile {
    pub dim: usize,
    pub entries: Vec<Vec<serde_json::Value>>,
}

impl MetricFile {
    pub fn to_form(&self) -> Result<BilinearForm<Rational>> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::InvalidArgument(format!(
                "metric entries must form a {0}×{0} array",
                self.dim
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(json_scalar).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        BilinearForm::from_rows(rows)
    }
}

fn json_scalar(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::ParseScalar(other.to_string())),
    }
}

pub fn parse_metric(text: &str) -> Result<BilinearForm<Rational>> {
    serde_json::from_str::<MetricFile>(text)?.to_form()
}

pub fn read_metric(path: &Path) -> Result<BilinearForm<Rational>> {
    parse_metric(&std::fs::read_to_string(path)?)
}

pub fn tables_json(t: &StructureTables<Rational>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TablesDocument::from_tables(t))?)
}

/// Product matrix as CSV: a header of pair labels, then one row per blade.
pub fn write_tables_csv<W: Write>(t: &StructureTables<Rational>, out: W) -> Result<()> {
    let doc = TablesDocument::from_tables(t);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["blade".to_string()];
    header.extend(doc.pairs.iter().cloned());
    w.write_record(&header)?;
    for (name, row) in doc.blades.iter().zip(&doc.product) {
        let mut record = vec![name.clone()];
        record.extend(row.iter().cloned());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub const SCAN_COLUMNS: [&str; 8] = [
    "rho", "nu", "lambda1", "lambda2", "lambda3", "lambda4", "eigengap", "on_locus",
];

pub fn write_scan_csv<W: Write>(records: &[ScanRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_COLUMNS)?;
    for r in records {
        let mut row = vec![r.rho.to_string(), r.nu.to_string()];
        row.extend(r.eigenvalues.iter().map(|x| x.to_string()));
        row.push(r.eigengap.to_string());
        row.push(if r.on_locus { "1" } else { "0" }.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses `"a:b"`.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("expected LO:HI, got {text:?}")))?;
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::ParseScalar(s.to_string()))
    };
    Ok((num(a)?, num(b)?))
}
