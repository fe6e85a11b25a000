//! The one record every command emits, and its three renderings.

use hydroshannon::entropy::{EntropyResult, Method};
use hydroshannon::QuantumState;
use serde::{Deserialize, Serialize};

/// A single evaluation, state echo included. `wall_time_ms` is the only
/// field allowed to differ between identical runs; every determinism
/// guarantee excludes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub dim: u32,
    pub charge: f64,
    pub n: u32,
    pub mu: Vec<i64>,
    pub radial: f64,
    pub angular: f64,
    pub total: f64,
    pub method: String,
    pub radial_err: f64,
    pub angular_err: f64,
    pub wall_time_ms: f64,
}

/// Fixed CSV column order. Scans append `asymptote,difference` when a
/// regime is requested; nothing else ever changes the header.
pub const CSV_HEADER: &str =
    "dim,charge,n,mu,radial,angular,total,method,radial_err,angular_err,wall_time_ms";

/// 15 significant digits, locale-free: the number format for CSV and text.
pub fn fmt15(v: f64) -> String {
    format!("{v:.14e}")
}

pub fn method_label(method: Method) -> &'static str {
    match method {
        Method::ClosedForm => "closed",
        Method::Oracle => "oracle",
        Method::SpecialCase => "special",
        Method::Asymptote => "asymptote",
    }
}

impl OutputRecord {
    pub fn new(state: &QuantumState, result: &EntropyResult, wall_time_ms: f64) -> Self {
        Self {
            dim: state.dim,
            charge: state.charge,
            n: state.n,
            mu: state.mu.clone(),
            radial: result.radial,
            angular: result.angular,
            total: result.total,
            method: method_label(result.method).to_string(),
            radial_err: result.radial_err,
            angular_err: result.angular_err,
            wall_time_ms,
        }
    }

    /// Component-wise `a - b` with the same state echo; emitted by
    /// `--method both` as a third record with method "difference".
    pub fn difference(a: &Self, b: &Self) -> Self {
        Self {
            dim: a.dim,
            charge: a.charge,
            n: a.n,
            mu: a.mu.clone(),
            radial: a.radial - b.radial,
            angular: a.angular - b.angular,
            total: a.total - b.total,
            method: "difference".to_string(),
            radial_err: 0.0,
            angular_err: 0.0,
            wall_time_ms: 0.0,
        }
    }

    /// mu entries joined by ';' so the field needs no CSV quoting.
    pub fn mu_field(&self) -> String {
        self.mu.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";")
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.dim,
            fmt15(self.charge),
            self.n,
            self.mu_field(),
            fmt15(self.radial),
            fmt15(self.angular),
            fmt15(self.total),
            self.method,
            fmt15(self.radial_err),
            fmt15(self.angular_err),
            fmt15(self.wall_time_ms),
        )
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn text_block(&self) -> String {
        let rows = [
            ("dim", self.dim.to_string()),
            ("charge", fmt15(self.charge)),
            ("n", self.n.to_string()),
            ("mu", self.mu_field()),
            ("radial", fmt15(self.radial)),
            ("angular", fmt15(self.angular)),
            ("total", fmt15(self.total)),
            ("method", self.method.clone()),
            ("radial_err", fmt15(self.radial_err)),
            ("angular_err", fmt15(self.angular_err)),
            ("wall_time_ms", format!("{:.3}", self.wall_time_ms)),
        ];
        let mut out = String::new();
        for (key, value) in rows {
            out.push_str(&format!("{key:<14}{value}\n"));
        }
        out
    }
}
