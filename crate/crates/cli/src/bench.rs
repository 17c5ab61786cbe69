//! Four built-in polynomials by six methods from Aberth starts.

use std::io::Write;

use simulzero::poly::BUILTIN_NAMES;
use simulzero::{
    aberth_points, builtin_suite, solve, MethodKind, Polynomial, RootSet, SolveReport,
    SolveStatus, SolverConfig,
};

use crate::error::CliError;
use crate::report::SolveRecord;

#[derive(Debug, Clone)]
pub struct BenchCell {
    pub method: MethodKind,
    pub report: SolveReport,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub name: &'static str,
    pub poly: Polynomial,
    pub roots: Option<RootSet>,
    /// One cell per method, in [`MethodKind::ALL`] order.
    pub cells: Vec<BenchCell>,
}

impl BenchRow {
    pub fn cell(&self, method: MethodKind) -> &BenchCell {
        self.cells
            .iter()
            .find(|c| c.method == method)
            .expect("every row holds all six methods")
    }
}

/// Runs all 24 cells with `config`. Rows come back in P1..P4 order.
pub fn run_bench(config: &SolverConfig) -> Result<Vec<BenchRow>, CliError> {
    builtin_suite()
        .into_iter()
        .zip(BUILTIN_NAMES)
        .map(|((poly, roots), name)| {
            let start = aberth_points(&poly)?;
            let cells = MethodKind::ALL
                .into_iter()
                .map(|method| {
                    let report = solve(&poly, method, start.clone().into(), config)?;
                    Ok(BenchCell { method, report })
                })
                .collect::<Result<_, CliError>>()?;
            Ok(BenchRow {
                name,
                poly,
                roots,
                cells,
            })
        })
        .collect()
}

/// One significant digit, e.g. `8e-14`.
pub fn short_residual(r: f64) -> String {
    format!("{r:.0e}")
}

pub fn cell_text(cell: &BenchCell) -> String {
    match cell.report.status {
        SolveStatus::Converged => format!(
            "{}({})",
            cell.report.iterations,
            short_residual(cell.report.final_residual())
        ),
        status => format!("FAIL({status})"),
    }
}

pub fn all_converged(rows: &[BenchRow]) -> bool {
    rows.iter()
        .flat_map(|r| &r.cells)
        .all(|c| c.report.status == SolveStatus::Converged)
}

pub fn records(rows: &[BenchRow]) -> Vec<SolveRecord> {
    rows.iter()
        .flat_map(|row| {
            row.cells
                .iter()
                .map(move |c| SolveRecord::new(row.name, c.method, &c.report))
        })
        .collect()
}

/// The 4x6 grid of `m(residual)` cells.
pub fn write_grid<W: Write>(mut out: W, rows: &[BenchRow]) -> Result<(), CliError> {
    let width = rows
        .iter()
        .flat_map(|r| r.cells.iter().map(|c| cell_text(c).len()))
        .chain(MethodKind::ALL.iter().map(|m| m.label().len()))
        .max()
        .unwrap_or(0);
    let mut line = format!("{:<6}", "Poly.");
    for m in MethodKind::ALL {
        line.push_str(&format!("  {:<width$}", m.label()));
    }
    writeln!(out, "{}", line.trim_end())?;
    for row in rows {
        let mut line = format!("{:<6}", row.name);
        for cell in &row.cells {
            line.push_str(&format!("  {:<width$}", cell_text(cell)));
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}
