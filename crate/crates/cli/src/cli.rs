//! Argument parsing and the three subcommands.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simulzero::{aberth_points, solve, IterateVector, MethodKind, SolveStatus, SolverConfig};

use crate::bench::{all_converged, records, run_bench, write_grid};
use crate::error::{CliError, EXIT_NUMERICAL};
use crate::format::{parse_points, resolve_polynomial};
use crate::order::{run_order, write_order_csv, DEFAULT_PERTURB, DEFAULT_SEED};
use crate::report::{write_csv, write_json_lines, write_table, SolveRecord};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "SIMULZERO_SEED";

#[derive(Debug, Parser)]
#[command(name = "simulzero", version, about = "Simultaneous polynomial root finders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one polynomial with one method.
    Solve(SolveArgs),
    /// Run the 4 x 6 benchmark grid from Aberth starts.
    Bench(BenchArgs),
    /// Estimate the convergence order from perturbed true roots.
    Order(OrderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    JsonLines,
}

#[derive(Debug, Args)]
pub struct Tolerances {
    /// Stop when max_k |P(z_k)| falls below this.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = 100)]
    pub max_iter: usize,
}

impl Tolerances {
    fn config(&self) -> SolverConfig {
        let defaults = SolverConfig::default();
        SolverConfig {
            tolerance: self.tol,
            max_iterations: self.max_iter,
            // the ceiling bounds |z|; keep it above absurdly loose tolerances
            divergence_ceiling: defaults.divergence_ceiling.max(self.tol * 2.0),
            ..defaults
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// builtin:P1..P4, coeffs:<c0,c1,...> (leading first) or file:<path>
    #[arg(long)]
    pub poly: String,
    /// wlm, dfm, nwm, m1, m2 or m3
    #[arg(long, default_value = "m3")]
    pub method: String,
    /// aberth or file:<path> with one complex point per line
    #[arg(long, default_value = "aberth")]
    pub init: String,
    #[command(flatten)]
    pub tolerances: Tolerances,
    /// Perturb and retry once when two approximations collide.
    #[arg(long)]
    pub jitter: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub tolerances: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Also write full-precision records here (CSV, or JSON lines for .jsonl/.json).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// builtin:P1..P3 or file:<path> in `roots` form
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value = "m3")]
    pub method: String,
    /// Relative size of the root perturbation.
    #[arg(long, default_value_t = DEFAULT_PERTURB)]
    pub perturb: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub tolerances: Tolerances,
}

fn parse_method(name: &str) -> Result<MethodKind, CliError> {
    name.parse()
        .map_err(|e: simulzero::ParseMethodError| CliError::Usage(format!("{e}: `{name}`")))
}

/// Runs a parsed command and returns the process exit code.
pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> i32 {
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args, out, err),
        Command::Bench(args) => cmd_bench(args, out, err),
        Command::Order(args) => cmd_order(args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn cmd_solve<W: Write, E: Write>(
    args: SolveArgs,
    out: &mut W,
    err: &mut E,
) -> Result<i32, CliError> {
    let source = resolve_polynomial(&args.poly)?;
    let method = parse_method(&args.method)?;
    let init: IterateVector = match args.init.as_str() {
        "aberth" => aberth_points(&source.poly)?.into(),
        other => {
            let path = other.strip_prefix("file:").ok_or_else(|| {
                CliError::Usage(format!("--init expects `aberth` or `file:<path>`, got `{other}`"))
            })?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
            parse_points(&text)?.into()
        }
    };
    let config = SolverConfig {
        jitter_on_collision: args.jitter,
        ..args.tolerances.config()
    };
    let report = solve(&source.poly, method, init, &config)?;
    let record = SolveRecord::new(&source.name, method, &report);
    match args.format {
        Format::Table => write_table(&mut *out, &record)?,
        Format::Csv => write_csv(&mut *out, std::slice::from_ref(&record))?,
        Format::JsonLines => write_json_lines(&mut *out, std::slice::from_ref(&record))?,
    }
    if report.status == SolveStatus::Converged {
        Ok(0)
    } else {
        match report.failure {
            Some(f) => writeln!(err, "status: {} ({f})", report.status)?,
            None => writeln!(err, "status: {}", report.status)?,
        }
        Ok(EXIT_NUMERICAL)
    }
}

pub fn cmd_bench<W: Write, E: Write>(
    args: BenchArgs,
    out: &mut W,
    err: &mut E,
) -> Result<i32, CliError> {
    let rows = run_bench(&args.tolerances.config())?;
    let recs = records(&rows);
    match args.format {
        Format::Table => write_grid(&mut *out, &rows)?,
        Format::Csv => write_csv(&mut *out, &recs)?,
        Format::JsonLines => write_json_lines(&mut *out, &recs)?,
    }
    if let Some(path) = &args.out {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        let json = matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("jsonl" | "json")
        );
        if json {
            write_json_lines(file, &recs)?;
        } else {
            write_csv(file, &recs)?;
        }
    }
    if all_converged(&rows) {
        Ok(0)
    } else {
        writeln!(err, "some cells did not converge")?;
        Ok(EXIT_NUMERICAL)
    }
}

pub fn cmd_order<W: Write, E: Write>(
    args: OrderArgs,
    out: &mut W,
    err: &mut E,
) -> Result<i32, CliError> {
    let source = resolve_polynomial(&args.poly)?;
    let method = parse_method(&args.method)?;
    let seed = match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer")))?,
        Err(_) => args.seed,
    };
    let study = run_order(&source, method, args.perturb, seed, &args.tolerances.config())?;
    if study.errors.len() < 2 {
        return Err(CliError::Numerical(
            "start already satisfies the stopping test; no sequence to estimate from".into(),
        ));
    }
    write_order_csv(&mut *out, &study)?;
    match (&study.estimate, study.report.status) {
        (Ok(_), SolveStatus::Converged) => Ok(0),
        (Err(e), _) => {
            writeln!(err, "order estimate unavailable: {e}")?;
            Ok(EXIT_NUMERICAL)
        }
        (Ok(_), status) => {
            writeln!(err, "status: {status}")?;
            Ok(EXIT_NUMERICAL)
        }
    }
}
