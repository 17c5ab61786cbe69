//! Flat solve records and their table, CSV and JSON-lines encodings.

use std::io::Write;

use serde::{Deserialize, Serialize};
use simulzero::{Complex64, MethodKind, SolveReport};

use crate::error::CliError;
use crate::format::{format_complex, parse_complex};

/// One solve, flattened for output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub poly: String,
    pub method: String,
    pub status: String,
    #[serde(rename = "m")]
    pub iterations: usize,
    /// Max residual at the final points.
    pub residual: f64,
    pub residual_history: Vec<f64>,
    /// Final points as `[re, im]` pairs.
    #[serde(rename = "final")]
    pub final_points: Vec<[f64; 2]>,
}

impl SolveRecord {
    pub fn new(poly: &str, method: MethodKind, report: &SolveReport) -> Self {
        SolveRecord {
            poly: poly.to_string(),
            method: method.name().to_string(),
            status: report.status.name().to_string(),
            iterations: report.iterations,
            residual: report.final_residual(),
            residual_history: report.residual_history.clone(),
            final_points: report.final_points.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// CSV row: list-valued fields are `;`-joined inside one column.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    poly: String,
    method: String,
    status: String,
    m: usize,
    residual: f64,
    residual_history: String,
    final_points: String,
}

impl From<&SolveRecord> for CsvRow {
    fn from(r: &SolveRecord) -> Self {
        let join = |items: Vec<String>| items.join(";");
        CsvRow {
            poly: r.poly.clone(),
            method: r.method.clone(),
            status: r.status.clone(),
            m: r.iterations,
            residual: r.residual,
            residual_history: join(r.residual_history.iter().map(f64::to_string).collect()),
            final_points: join(
                r.final_points
                    .iter()
                    .map(|&[re, im]| format_complex(Complex64::new(re, im)))
                    .collect(),
            ),
        }
    }
}

impl TryFrom<CsvRow> for SolveRecord {
    type Error = CliError;

    fn try_from(row: CsvRow) -> Result<Self, CliError> {
        let split = |s: &str| -> Vec<String> {
            if s.is_empty() {
                Vec::new()
            } else {
                s.split(';').map(str::to_string).collect()
            }
        };
        let residual_history = split(&row.residual_history)
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Parse(format!("bad residual `{v}`")))
            })
            .collect::<Result<_, _>>()?;
        let final_points = split(&row.final_points)
            .iter()
            .map(|v| parse_complex(v).map(|z| [z.re, z.im]))
            .collect::<Result<_, _>>()?;
        Ok(SolveRecord {
            poly: row.poly,
            method: row.method,
            status: row.status,
            iterations: row.m,
            residual: row.residual,
            residual_history,
            final_points,
        })
    }
}

pub fn write_csv<W: Write>(out: W, records: &[SolveRecord]) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(out);
    for r in records {
        wtr.serialize(CsvRow::from(r))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<SolveRecord>, CliError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<CsvRow>()
        .map(|row| SolveRecord::try_from(row?))
        .collect()
}

pub fn write_json_lines<W: Write>(mut out: W, records: &[SolveRecord]) -> Result<(), CliError> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_json_lines(text: &str) -> Result<Vec<SolveRecord>, CliError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(CliError::from))
        .collect()
}

/// Human-readable report of a single solve.
pub fn write_table<W: Write>(mut out: W, r: &SolveRecord) -> Result<(), CliError> {
    writeln!(out, "polynomial  {}", r.poly)?;
    writeln!(out, "method      {}", r.method)?;
    writeln!(out, "status      {}", r.status)?;
    writeln!(out, "iterations  {}", r.iterations)?;
    writeln!(out, "residual    {:.3e}", r.residual)?;
    writeln!(out)?;
    writeln!(out, "{:>4}  {:>12}", "m", "max|P(z)|")?;
    for (m, res) in r.residual_history.iter().enumerate() {
        writeln!(out, "{m:>4}  {res:>12.3e}")?;
    }
    writeln!(out)?;
    writeln!(out, "{:>4}  {:>24}  {:>24}", "k", "re", "im")?;
    for (k, [re, im]) in r.final_points.iter().enumerate() {
        writeln!(out, "{:>4}  {re:>24.16e}  {im:>24.16e}", k + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SolveRecord {
        SolveRecord {
            poly: "coeffs:1,0,-1".into(),
            method: "m3".into(),
            status: "Converged".into(),
            iterations: 2,
            residual: 1.0 / 3.0 * 1e-14,
            residual_history: vec![3.0, 0.1 + 0.2, 1.0 / 3.0 * 1e-14],
            final_points: vec![[1.0, -0.0], [-1.0, 1e-300]],
        }
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("poly,method,status,m,residual,residual_history,final_points\n"));
        assert_eq!(read_csv(&text).unwrap(), [sample()]);
    }

    #[test]
    fn json_lines_round_trip() {
        let mut buf = Vec::new();
        write_json_lines(&mut buf, &[sample(), sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains("\"m\":2"));
        assert!(text.contains("\"final\":[[1.0,-0.0],[-1.0,1e-300]]"));
        assert_eq!(read_json_lines(&text).unwrap(), [sample(), sample()]);
    }

    #[test]
    fn table_mentions_status() {
        let mut buf = Vec::new();
        write_table(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("status      Converged"));
        assert!(text.contains("iterations  2"));
    }
}
