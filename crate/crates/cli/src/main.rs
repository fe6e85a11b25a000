//! Argument surface and exit-code mapping for the `hydroshannon` binary.
//! Exit codes: 0 success, 1 verification failure, 2 validation, 3 quadrature
//! non-convergence.


// `!(x > 0.0)`-style guards reject NaN along with the out-of-range values;
// the partial_cmp rewrite clippy suggests would hide that intent.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hydroshannon_cli::commands::{
    self, ComputeSpec, EvalMethod, Failure, Family, OutputFormat, Regime, ScanSpec,
};
use hydroshannon_cli::verify::{self, Suite};

#[derive(Parser)]
#[command(
    name = "hydroshannon",
    version,
    about = "Shannon entropy of D-dimensional hydrogenic bound states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one stationary state
    Compute(ComputeArgs),
    /// Sweep a family of states into CSV
    Scan(ScanArgs),
    /// Run the built-in verification suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Spatial dimension D >= 2
    #[arg(long)]
    dim: u32,
    /// Nuclear charge Z > 0
    #[arg(long)]
    charge: f64,
    /// Comma-separated n,mu_1,..,mu_{D-1}; with --shorthand just n,l
    #[arg(long)]
    quantum: String,
    /// Interpret --quantum as n,l and zero-fill the remaining mu entries
    #[arg(long)]
    shorthand: bool,
    /// closed: analytic expressions; oracle: direct quadrature; both: the
    /// two records plus their difference
    #[arg(long, value_enum, default_value_t = EvalMethod::Closed)]
    method: EvalMethod,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Relative tolerance handed to every quadrature
    #[arg(long)]
    rel_tol: Option<f64>,
}

#[derive(Args)]
struct ScanArgs {
    /// Principal quantum number range a:b, inclusive
    #[arg(long)]
    n_range: String,
    /// Dimension range a:b, inclusive
    #[arg(long)]
    dim_range: String,
    /// Nuclear charge Z > 0 applied to every state
    #[arg(long)]
    charge: f64,
    #[arg(long, value_enum, default_value_t = Family::All)]
    family: Family,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append asymptote and difference columns for the given regime
    #[arg(long, value_enum)]
    asymptote: Option<Regime>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Absolute tolerance for every value comparison
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Scan(args) => run_scan(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.exit)
        }
    }
}

fn run_compute(args: ComputeArgs) -> Result<ExitCode, Failure> {
    let spec = ComputeSpec {
        dim: args.dim,
        charge: args.charge,
        quantum: args.quantum,
        shorthand: args.shorthand,
        method: args.method,
        format: args.format,
        rel_tol: args.rel_tol,
    };
    print!("{}", commands::compute(&spec)?);
    Ok(ExitCode::SUCCESS)
}

fn run_scan(args: ScanArgs) -> Result<ExitCode, Failure> {
    let spec = ScanSpec {
        n_range: commands::parse_range(&args.n_range, "n-range", 1)?,
        dim_range: commands::parse_range(&args.dim_range, "dim-range", 2)?,
        charge: args.charge,
        family: args.family,
        regime: args.asymptote,
    };
    let csv = commands::scan(&spec)?;
    match args.out {
        Some(path) => std::fs::write(&path, csv).map_err(|e| {
            Failure::validation(format!("cannot write {}: {e}", path.display()))
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(csv.as_bytes())
                .map_err(|e| Failure::validation(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    if !args.tol.is_finite() || !(args.tol > 0.0) {
        return Err(Failure::validation(format!(
            "--tol must be a positive finite number, got {}",
            args.tol
        )));
    }
    let checks = verify::run_suite(args.suite, args.tol).map_err(Failure::from)?;
    print!("{}", verify::render_matrix(&checks));
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("{} checks, {failed} failed", checks.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
