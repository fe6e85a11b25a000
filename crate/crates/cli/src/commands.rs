//! The compute and scan subcommands, plus the shared failure type that
//! carries a process exit code: 2 for anything the caller got wrong,
//! 3 for quadrature that refused to converge.

use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;

use hydroshannon::entropy::{
    angular_entropy_gegenbauer_with, asymptote, radial_entropy_closed_with, total_entropy,
    AsymptoticRegime, EntropyResult, Method,
};
use hydroshannon::error::Error;
use hydroshannon::oracle::{angular_entropy_oracle, radial_entropy_oracle};
use hydroshannon::quad::QuadratureConfig;
use hydroshannon::QuantumState;

use crate::record::{fmt15, OutputRecord, CSV_HEADER};

#[derive(Debug)]
pub struct Failure {
    pub exit: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { exit: 2, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { exit: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergent { .. }
            | Error::NormalizationCheck { .. }
            | Error::NonTerminating(_) => Self::numeric(e.to_string()),
            _ => Self::validation(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Closed,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// one row per orbital number: chain (l, 0, .., 0) for l = 0..n-1
    All,
    /// the single state with every mu equal to n-1
    QuasiSpherical,
    /// the single state with every mu zero
    SStates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    /// large-n radial expression, compared against the radial column
    Rydberg,
    /// large-D expression matching the family: total for quasi-spherical,
    /// angular for s-states, radial otherwise
    Highd,
}

/// Everything `compute` needs, already typed.
pub struct ComputeSpec {
    pub dim: u32,
    pub charge: f64,
    pub quantum: String,
    pub shorthand: bool,
    pub method: EvalMethod,
    pub format: OutputFormat,
    pub rel_tol: Option<f64>,
}

/// Everything `scan` needs; ranges inclusive.
pub struct ScanSpec {
    pub n_range: (u32, u32),
    pub dim_range: (u32, u32),
    pub charge: f64,
    pub family: Family,
    pub regime: Option<Regime>,
}

/// Parses "a:b" with both bounds mandatory; `min_allowed` guards the lower.
pub fn parse_range(text: &str, flag: &str, min_allowed: u32) -> Result<(u32, u32), Failure> {
    let (a, b) = text.split_once(':').ok_or_else(|| {
        Failure::validation(format!("--{flag} expects an inclusive range a:b, got '{text}'"))
    })?;
    let parse = |s: &str| {
        s.trim().parse::<u32>().map_err(|_| {
            Failure::validation(format!("--{flag} bounds must be nonnegative integers, got '{text}'"))
        })
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a < min_allowed {
        return Err(Failure::validation(format!(
            "--{flag} lower bound must be at least {min_allowed}, got {a}"
        )));
    }
    if a > b {
        return Err(Failure::validation(format!(
            "--{flag} lower bound exceeds upper bound in '{text}'"
        )));
    }
    Ok((a, b))
}

/// Turns `--quantum` text into a validated state. Without `--shorthand`
/// the list must carry all D-1 mu entries; with it, exactly n,l.
pub fn parse_state(
    dim: u32,
    charge: f64,
    quantum: &str,
    shorthand: bool,
) -> Result<QuantumState, Failure> {
    let parts: Vec<i64> = quantum
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            Failure::validation(format!(
                "--quantum expects a comma-separated integer list, got '{quantum}'"
            ))
        })?;
    let n_raw = parts[0];
    if n_raw < 1 {
        return Err(Failure::validation(format!(
            "principal quantum number must be at least 1, got {n_raw}"
        )));
    }
    let n = n_raw as u32;
    let mu = if shorthand {
        if parts.len() != 2 {
            return Err(Failure::validation(
                "--shorthand expects exactly --quantum n,l".to_string(),
            ));
        }
        let mut mu = vec![0i64; dim.saturating_sub(1) as usize];
        if let Some(first) = mu.first_mut() {
            *first = parts[1];
        }
        mu
    } else {
        parts[1..].to_vec()
    };
    QuantumState::new(dim, charge, n, mu).map_err(Failure::from)
}

/// Quadrature settings from the flag; the absolute floor follows the
/// requested relative precision down so it never masks it.
pub fn quad_config(rel_tol: Option<f64>) -> Result<QuadratureConfig, Failure> {
    let mut cfg = QuadratureConfig::default();
    if let Some(r) = rel_tol {
        if !r.is_finite() || !(r > 0.0) {
            return Err(Failure::validation(format!(
                "--rel-tol must be a positive finite number, got {r}"
            )));
        }
        cfg.rel_tol = r;
        cfg.abs_tol = cfg.abs_tol.min(r * 1e-2);
    }
    Ok(cfg)
}

/// Like `total_entropy` but honoring the caller's quadrature settings for
/// the closed and oracle routes.
pub fn evaluate(
    state: &QuantumState,
    method: Method,
    cfg: &QuadratureConfig,
) -> Result<EntropyResult, Error> {
    match method {
        Method::ClosedForm => {
            let (radial, radial_err) = radial_entropy_closed_with(state, cfg)?;
            let (angular, angular_err) = angular_entropy_gegenbauer_with(state, cfg)?;
            Ok(EntropyResult {
                radial,
                angular,
                total: radial + angular,
                method,
                radial_err,
                angular_err,
            })
        }
        Method::Oracle => {
            let r = radial_entropy_oracle(state, cfg)?;
            let a = angular_entropy_oracle(state, cfg)?;
            for (part, res) in [("radial", &r), ("angular", &a)] {
                if !res.converged {
                    return Err(Error::NonConvergent {
                        context: format!("{part} oracle quadrature"),
                        value: res.value,
                        error_estimate: res.error_estimate,
                        tolerance: cfg.abs_tol.max(cfg.rel_tol * res.value.abs()),
                    });
                }
            }
            Ok(EntropyResult {
                radial: r.value,
                angular: a.value,
                total: r.value + a.value,
                method,
                radial_err: r.error_estimate,
                angular_err: a.error_estimate,
            })
        }
        other => total_entropy(state, other),
    }
}

pub fn timed_record(
    state: &QuantumState,
    method: Method,
    cfg: &QuadratureConfig,
) -> Result<OutputRecord, Error> {
    let start = Instant::now();
    let result = evaluate(state, method, cfg)?;
    Ok(OutputRecord::new(state, &result, start.elapsed().as_secs_f64() * 1e3))
}

pub fn render(records: &[OutputRecord], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => {
            for r in records {
                let _ = writeln!(out, "{}", r.json_line());
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "{CSV_HEADER}");
            for r in records {
                let _ = writeln!(out, "{}", r.csv_row());
            }
        }
        OutputFormat::Text => {
            for (i, r) in records.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&r.text_block());
            }
        }
    }
    out
}

/// `compute`: one state, one to three records on stdout.
pub fn compute(spec: &ComputeSpec) -> Result<String, Failure> {
    let state = parse_state(spec.dim, spec.charge, &spec.quantum, spec.shorthand)?;
    let cfg = quad_config(spec.rel_tol)?;
    let mut records = Vec::new();
    match spec.method {
        EvalMethod::Closed => records.push(timed_record(&state, Method::ClosedForm, &cfg)?),
        EvalMethod::Oracle => records.push(timed_record(&state, Method::Oracle, &cfg)?),
        EvalMethod::Both => {
            let closed = timed_record(&state, Method::ClosedForm, &cfg)?;
            let orac = timed_record(&state, Method::Oracle, &cfg)?;
            let diff = OutputRecord::difference(&closed, &orac);
            records.extend([closed, orac, diff]);
        }
    }
    Ok(render(&records, spec.format))
}

/// The states one (dim, n) cell contributes, in emission order.
pub fn family_states(
    family: Family,
    dim: u32,
    n: u32,
    charge: f64,
) -> Result<Vec<QuantumState>, Error> {
    match family {
        Family::SStates => Ok(vec![QuantumState::s_state(dim, charge, n)?]),
        Family::QuasiSpherical => Ok(vec![QuantumState::quasi_spherical(dim, charge, n)?]),
        Family::All => (0..n)
            .map(|l| {
                let mut mu = vec![0i64; (dim - 1) as usize];
                mu[0] = l as i64;
                QuantumState::new(dim, charge, n, mu)
            })
            .collect(),
    }
}

fn regime_columns(
    regime: Regime,
    family: Family,
    rec: &OutputRecord,
) -> Result<(f64, f64), Error> {
    let (reg, part) = match regime {
        Regime::Rydberg => (AsymptoticRegime::RydbergRadial, rec.radial),
        Regime::Highd => match family {
            Family::QuasiSpherical => (AsymptoticRegime::HighDTotalQuasiSpherical, rec.total),
            Family::SStates => (AsymptoticRegime::HighDAngular, rec.angular),
            Family::All => (AsymptoticRegime::HighDRadial, rec.radial),
        },
    };
    let a = asymptote(reg, rec.n, rec.dim, rec.charge)?;
    Ok((a, part - a))
}

/// `scan`: closed-form rows for the whole grid, dimension-major then n then
/// family order. Evaluation is parallel; emission follows input order.
pub fn scan(spec: &ScanSpec) -> Result<String, Failure> {
    let mut states = Vec::new();
    for dim in spec.dim_range.0..=spec.dim_range.1 {
        for n in spec.n_range.0..=spec.n_range.1 {
            states.extend(family_states(spec.family, dim, n, spec.charge).map_err(Failure::from)?);
        }
    }
    let cfg = QuadratureConfig::default();
    let rows: Vec<OutputRecord> = states
        .par_iter()
        .map(|s| timed_record(s, Method::ClosedForm, &cfg))
        .collect::<Result<_, Error>>()
        .map_err(Failure::from)?;

    let mut out = String::new();
    match spec.regime {
        None => {
            let _ = writeln!(out, "{CSV_HEADER}");
            for r in &rows {
                let _ = writeln!(out, "{}", r.csv_row());
            }
        }
        Some(reg) => {
            let _ = writeln!(out, "{CSV_HEADER},asymptote,difference");
            for r in &rows {
                let (a, d) = regime_columns(reg, spec.family, r).map_err(Failure::from)?;
                let _ = writeln!(out, "{},{},{}", r.csv_row(), fmt15(a), fmt15(d));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("2:5", "dim-range", 2).unwrap(), (2, 5));
        assert_eq!(parse_range("7:7", "n-range", 1).unwrap(), (7, 7));
        assert!(parse_range("5:2", "n-range", 1).is_err());
        assert!(parse_range("3", "n-range", 1).is_err());
        assert!(parse_range("1:4", "dim-range", 2).is_err());
        assert!(parse_range("a:b", "n-range", 1).is_err());
    }

    #[test]
    fn quantum_parsing_full_and_shorthand() {
        let full = parse_state(3, 1.0, "2,1,0", false).unwrap();
        assert_eq!((full.n, full.mu.as_slice()), (2, &[1i64, 0][..]));
        let short = parse_state(5, 1.0, "3,2", true).unwrap();
        assert_eq!(short.mu, vec![2, 0, 0, 0]);
        // missing entries without the flag is a validation failure
        assert_eq!(parse_state(5, 1.0, "3,2", false).unwrap_err().exit, 2);
        // shorthand takes exactly two numbers
        assert_eq!(parse_state(5, 1.0, "3,2,0", true).unwrap_err().exit, 2);
        assert_eq!(parse_state(3, 1.0, "0,0,0", false).unwrap_err().exit, 2);
        assert_eq!(parse_state(3, 1.0, "2,x", false).unwrap_err().exit, 2);
    }

    #[test]
    fn orbital_violation_names_invariant() {
        let err = parse_state(3, 1.0, "1,1,0", false).unwrap_err();
        assert_eq!(err.exit, 2);
        assert!(err.message.contains("l exceeds n-1"), "{}", err.message);
    }

    #[test]
    fn family_enumeration() {
        assert_eq!(family_states(Family::All, 4, 3, 1.0).unwrap().len(), 3);
        let qs = family_states(Family::QuasiSpherical, 4, 3, 1.0).unwrap();
        assert_eq!(qs[0].mu, vec![2, 2, 2]);
        let ss = family_states(Family::SStates, 4, 3, 1.0).unwrap();
        assert_eq!(ss[0].mu, vec![0, 0, 0]);
    }

    #[test]
    fn compute_both_emits_three_records_and_tiny_difference() {
        let spec = ComputeSpec {
            dim: 2,
            charge: 1.0,
            quantum: "1,0".into(),
            shorthand: false,
            method: EvalMethod::Both,
            format: OutputFormat::Json,
            rel_tol: None,
        };
        let out = compute(&spec).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        let diff: OutputRecord = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(diff.method, "difference");
        assert!(diff.total.abs() < 1e-9);
    }

    #[test]
    fn scan_grid_order_is_deterministic() {
        let spec = ScanSpec {
            n_range: (1, 2),
            dim_range: (2, 3),
            charge: 1.0,
            family: Family::All,
            regime: None,
        };
        let out = scan(&spec).unwrap();
        let keys: Vec<String> = out
            .lines()
            .skip(1)
            .map(|l| l.splitn(5, ',').take(4).collect::<Vec<_>>().join(","))
            .collect();
        // dim-major, then n, then l
        let want = [
            "2,1.00000000000000e0,1,0",
            "2,1.00000000000000e0,2,0",
            "2,1.00000000000000e0,2,1",
            "3,1.00000000000000e0,1,0;0",
            "3,1.00000000000000e0,2,0;0",
            "3,1.00000000000000e0,2,1;0",
        ];
        assert_eq!(keys, want);
    }
}
