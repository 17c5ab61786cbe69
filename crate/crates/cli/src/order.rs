//! Convergence-order study output.

use std::io::Write;

use simulzero::{order_study, perturbed_start, MethodKind, OrderStudy, SolverConfig};

use crate::error::CliError;
use crate::format::PolySource;

/// Default relative perturbation of the reference roots.
pub const DEFAULT_PERTURB: f64 = 1e-2;
pub const DEFAULT_SEED: u64 = 1;

pub fn run_order(
    source: &PolySource,
    method: MethodKind,
    perturb: f64,
    seed: u64,
    config: &SolverConfig,
) -> Result<OrderStudy, CliError> {
    let roots = source.roots.as_ref().ok_or_else(|| {
        CliError::Usage(format!(
            "`{}` has no reference roots; use P1..P3 or a `roots` file",
            source.name
        ))
    })?;
    if !(perturb >= 0.0) || !perturb.is_finite() {
        return Err(CliError::Usage("--perturb must be a finite non-negative number".into()));
    }
    let start = perturbed_start(roots, perturb, seed);
    Ok(order_study(&source.poly, roots, method, start, config)?)
}

/// `m,error,rho` rows, then a `# final_order` comment line.
pub fn write_order_csv<W: Write>(mut out: W, study: &OrderStudy) -> Result<(), CliError> {
    let rhos = study.estimate.as_ref().ok().map(|e| &e.per_step_orders);
    writeln!(out, "m,error,rho")?;
    for (m, err) in study.errors.iter().enumerate() {
        let rho = rhos
            .and_then(|r| r.get(m).copied().flatten())
            .map(|r| r.to_string())
            .unwrap_or_default();
        writeln!(out, "{m},{err},{rho}")?;
    }
    match &study.estimate {
        Ok(est) => writeln!(
            out,
            "# final_order={} noise_floor={:e} status={}",
            est.final_order, study.floor, study.report.status
        )?,
        Err(err) => writeln!(out, "# final_order=none ({err})")?,
    }
    Ok(())
}
