//! Built-in verification suites behind `hydroshannon verify`: curated value
//! checks with a printable pass/fail matrix.

use clap::ValueEnum;

use hydroshannon::entropy::{
    angular_entropy_gegenbauer, angular_entropy_special, asymptote, radial_entropy_closed,
    radial_entropy_special, total_entropy, total_quasi_spherical, AsymptoticRegime, Method,
};
use hydroshannon::error::Error;
use hydroshannon::hypersum::entropic_moment;
use hydroshannon::oracle::{angular_entropy_oracle, lambda_q_oracle, radial_entropy_oracle};
use hydroshannon::quad::QuadratureConfig;
use hydroshannon::QuantumState;

use crate::record::fmt15;

const PI: f64 = std::f64::consts::PI;
const LN_2: f64 = std::f64::consts::LN_2;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ground,
    Lowlying,
    Special,
    Asymptotic,
    All,
}

/// One matrix row. Value checks pass when |got - want| <= tol; ordering
/// checks (tol = 0) pass when got < want strictly.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub got: f64,
    pub want: f64,
    pub tol: f64,
    pub pass: bool,
}

fn value_check(suite: &'static str, name: String, got: f64, want: f64, tol: f64) -> Check {
    Check { suite, name, got, want, tol, pass: (got - want).abs() <= tol }
}

fn order_check(suite: &'static str, name: String, got: f64, want: f64) -> Check {
    Check { suite, name, got, want, tol: 0.0, pass: got < want }
}

/// Exact ground and s-state values in two and three dimensions, by both
/// the closed forms and the quadrature route.
pub fn ground(tol: f64) -> Result<Vec<Check>, Error> {
    let cfg = QuadratureConfig::default();
    let mut checks = Vec::new();
    let cases = [
        (2u32, 2.0 - 4.0 * LN_2, (2.0 * PI).ln(), 2.0 + (PI / 8.0).ln()),
        (3u32, 3.0 - 2.0 * LN_2, (4.0 * PI).ln(), 3.0 + PI.ln()),
    ];
    for (dim, radial, angular, total) in cases {
        let state = QuantumState::s_state(dim, 1.0, 1)?;
        checks.push(value_check(
            "ground",
            format!("radial D={dim} closed"),
            radial_entropy_closed(&state)?,
            radial,
            tol,
        ));
        checks.push(value_check(
            "ground",
            format!("radial D={dim} oracle"),
            radial_entropy_oracle(&state, &cfg)?.value,
            radial,
            tol,
        ));
        checks.push(value_check(
            "ground",
            format!("angular D={dim} closed"),
            angular_entropy_gegenbauer(&state)?,
            angular,
            tol,
        ));
        checks.push(value_check(
            "ground",
            format!("angular D={dim} oracle"),
            angular_entropy_oracle(&state, &cfg)?.value,
            angular,
            tol,
        ));
        checks.push(value_check(
            "ground",
            format!("total D={dim} closed"),
            total_entropy(&state, Method::ClosedForm)?.total,
            total,
            tol,
        ));
        checks.push(value_check(
            "ground",
            format!("total D={dim} oracle"),
            total_entropy(&state, Method::Oracle)?.total,
            total,
            tol,
        ));
    }
    Ok(checks)
}

/// Closed forms against the quadrature route for every state with n <= 3,
/// all orbitals, dimensions 2..5, two charges for the radial part.
pub fn lowlying(tol: f64) -> Result<Vec<Check>, Error> {
    let cfg = QuadratureConfig::default();
    let mut checks = Vec::new();
    for dim in 2..=5u32 {
        for n in 1..=3u32 {
            for l in 0..n {
                let mut mu = vec![0i64; (dim - 1) as usize];
                mu[0] = l as i64;
                for z in [1.0, 2.5] {
                    let state = QuantumState::new(dim, z, n, mu.clone())?;
                    checks.push(value_check(
                        "lowlying",
                        format!("radial closed vs oracle D={dim} n={n} l={l} Z={z}"),
                        radial_entropy_closed(&state)?,
                        radial_entropy_oracle(&state, &cfg)?.value,
                        tol,
                    ));
                }
                let state = QuantumState::new(dim, 1.0, n, mu.clone())?;
                checks.push(value_check(
                    "lowlying",
                    format!("angular closed vs oracle D={dim} n={n} l={l}"),
                    angular_entropy_gegenbauer(&state)?,
                    angular_entropy_oracle(&state, &cfg)?.value,
                    tol,
                ));
                checks.push(value_check(
                    "lowlying",
                    format!("moment q=2 closed vs oracle D={dim} n={n} l={l}"),
                    entropic_moment(&state, 2)?,
                    lambda_q_oracle(&state, 2.0, &cfg)?.value,
                    tol,
                ));
            }
        }
    }
    Ok(checks)
}

/// The fully analytic families: quasi-spherical totals against their
/// radial + angular split, special paths against the general closed forms
/// at l = n-1, and two exact constants.
pub fn special(tol: f64) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    for dim in 2..=8u32 {
        for n in 1..=5u32 {
            let state = QuantumState::quasi_spherical(dim, 1.0, n)?;
            checks.push(value_check(
                "special",
                format!("quasi-spherical total vs parts D={dim} n={n}"),
                total_quasi_spherical(&state)?,
                radial_entropy_special(&state)? + angular_entropy_special(&state)?,
                tol,
            ));
        }
    }
    for dim in 2..=6u32 {
        for n in 1..=4u32 {
            let state = QuantumState::quasi_spherical(dim, 1.0, n)?;
            checks.push(value_check(
                "special",
                format!("radial special vs general D={dim} n={n}"),
                radial_entropy_special(&state)?,
                radial_entropy_closed(&state)?,
                tol,
            ));
            checks.push(value_check(
                "special",
                format!("angular special vs general D={dim} n={n}"),
                angular_entropy_special(&state)?,
                angular_entropy_gegenbauer(&state)?,
                tol,
            ));
        }
    }
    checks.push(value_check(
        "special",
        "total n=2 D=3 circular exact".into(),
        total_quasi_spherical(&QuantumState::new(3, 1.0, 2, vec![1, 1])?)?,
        2.5 + (16.0 * PI).ln() + 2.0 * EULER_GAMMA,
        tol,
    ));
    checks.push(value_check(
        "special",
        "radial n=2 D=3 circular exact".into(),
        radial_entropy_special(&QuantumState::new(3, 1.0, 2, vec![1, 1])?)?,
        5.0 / 6.0 + 24f64.ln() + 2.0 * EULER_GAMMA,
        tol,
    ));
    Ok(checks)
}

/// Monotone approach to the limiting expressions; each row demands the gap
/// at the larger parameter stay strictly below the previous one.
pub fn asymptotic() -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();

    let rydberg_gap = |n: u32| -> Result<f64, Error> {
        let state = QuantumState::new(3, 1.0, n, vec![0, 0])?;
        Ok((radial_entropy_closed(&state)? - asymptote(AsymptoticRegime::RydbergRadial, n, 3, 1.0)?)
            .abs())
    };
    let mut prev = rydberg_gap(20)?;
    for n in [40u32, 80] {
        let gap = rydberg_gap(n)?;
        checks.push(order_check(
            "asymptotic",
            format!("radial large-n gap shrinks at n={n}"),
            gap,
            prev,
        ));
        prev = gap;
    }

    let angular_gap = |dim: u32| -> Result<f64, Error> {
        let state = QuantumState::s_state(dim, 1.0, 1)?;
        let s = angular_entropy_special(&state)?;
        let a = asymptote(AsymptoticRegime::HighDAngular, 1, dim, 1.0)?;
        Ok((s - a).abs() / s.abs())
    };
    let mut prev = angular_gap(50)?;
    for dim in [100u32, 200] {
        let gap = angular_gap(dim)?;
        checks.push(order_check(
            "asymptotic",
            format!("angular large-D relative gap shrinks at D={dim}"),
            gap,
            prev,
        ));
        prev = gap;
    }

    for n in [1u32, 2] {
        let total_gap = |dim: u32| -> Result<f64, Error> {
            let state = QuantumState::quasi_spherical(dim, 1.0, n)?;
            let s = total_quasi_spherical(&state)?;
            let a = asymptote(AsymptoticRegime::HighDTotalQuasiSpherical, n, dim, 1.0)?;
            Ok((s - a).abs() / dim as f64)
        };
        let mut prev = total_gap(50)?;
        for dim in [100u32, 200] {
            let gap = total_gap(dim)?;
            checks.push(order_check(
                "asymptotic",
                format!("quasi-spherical per-D gap shrinks at n={n} D={dim}"),
                gap,
                prev,
            ));
            prev = gap;
        }
    }

    Ok(checks)
}

pub fn run_suite(suite: Suite, tol: f64) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Ground | Suite::All) {
        checks.extend(ground(tol)?);
    }
    if matches!(suite, Suite::Lowlying | Suite::All) {
        checks.extend(lowlying(tol)?);
    }
    if matches!(suite, Suite::Special | Suite::All) {
        checks.extend(special(tol)?);
    }
    if matches!(suite, Suite::Asymptotic | Suite::All) {
        checks.extend(asymptotic()?);
    }
    Ok(checks)
}

/// Aligned pass/fail matrix, one row per check.
pub fn render_matrix(checks: &[Check]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<11} {:<52} {:>22} {:>22} {:>10} {:>8}  {}\n",
        "suite", "check", "got", "want", "|diff|", "tol", "result"
    ));
    for c in checks {
        out.push_str(&format!(
            "{:<11} {:<52} {:>22} {:>22} {:>10.2e} {:>8.1e}  {}\n",
            c.suite,
            c.name,
            fmt15(c.got),
            fmt15(c.want),
            (c.got - c.want).abs(),
            c.tol,
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }
    out
}
