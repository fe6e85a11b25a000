//! Independent ground truth: the entropy definitions integrated directly
//! from the pointwise densities, the angular moment integrated for real
//! order, and a cross-method consistency reporter.
//!
//! Nothing here reuses the closed-form coefficient machinery; agreement
//! between this module and `entropy` is the project's central evidence.

use crate::entropy;
use crate::error::Error;
use crate::hydrogenic::{self, QuantumState};
use crate::hypersum;
use crate::quad::{self, IntegralResult, Interval, QuadratureConfig};
use crate::specfun::{self, PolyFamily, PolynomialSpec};

const PI: f64 = std::f64::consts::PI;

fn norm_tolerance(config: &QuadratureConfig) -> f64 {
    1e-10f64.max(10.0 * config.rel_tol.max(config.abs_tol))
}

fn check_norm(context: &str, integral: f64, config: &QuadratureConfig) -> Result<(), Error> {
    let tol = norm_tolerance(config);
    if (integral - 1.0).abs() > tol {
        return Err(Error::NormalizationCheck { context: context.into(), integral, tolerance: tol });
    }
    Ok(())
}

/// -integral of r^(D-1) rho ln rho dr by direct adaptive quadrature, in the
/// dimensionless variable x = r/lambda with breakpoints at the Laguerre
/// roots (the density's zeros) and at the weight peak.
pub fn radial_entropy_oracle(
    state: &QuantumState,
    config: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    let p = hydrogenic::validate_and_derive(state)?;
    let (n, l, dim) = (state.n, state.l(), state.dim);
    let m = n - l - 1;
    let alpha = (2 * l + dim - 2) as f64;
    let eta = (2 * n + dim - 3) as f64 / 2.0;
    // r^(D-1) rho(r) dr = kn x^(2l+D-1) e^(-x) L(x)^2 dx with
    // kn = (n-l-1)! / (2 eta (n+l+D-3)!)
    let ln_kn = specfun::log_gamma_half(2 * (n - l))
        - (2.0 * eta).ln()
        - specfun::log_gamma_half(2 * (n + l + dim - 2));
    // ln rho(lambda x) carries the physical normalization
    let ln_nsq = ln_kn - dim as f64 * p.lambda.ln();
    let pow = (2 * l + dim - 1) as f64;
    let two_l = 2.0 * l as f64;

    let weight = move |x: f64| -> Option<(f64, f64)> {
        if x <= 0.0 {
            return None;
        }
        let lag = specfun::eval_raw(PolyFamily::LaguerreL, m, alpha, x);
        if lag == 0.0 || !lag.is_finite() {
            return None;
        }
        let ln_l2 = 2.0 * lag.abs().ln();
        let w = (ln_kn + pow * x.ln() - x + ln_l2).exp();
        if w == 0.0 {
            return None;
        }
        Some((w, ln_nsq + two_l * x.ln() - x + ln_l2))
    };

    let mut bps: Vec<f64> = if m == 0 {
        Vec::new()
    } else {
        specfun::poly_roots(&PolynomialSpec::laguerre(m, alpha)?)?
    };
    bps.push(pow.max(1.0));
    let domain = Interval::SemiInfinite { start: 0.0, decay_scale: 1.0 };

    let norm = quad::integrate_adaptive(
        &|x| weight(x).map_or(0.0, |(w, _)| w),
        domain,
        &bps,
        config,
    )?;
    check_norm("radial oracle density normalization", norm.value, config)?;

    let res = quad::integrate_adaptive(
        &|x| weight(x).map_or(0.0, |(w, lr)| w * lr),
        domain,
        &bps,
        config,
    )?;
    Ok(IntegralResult { value: -res.value, ..res })
}

// One chain link of the factorized angular density, in x = cos(theta):
// p(x) = (1-x^2)^(alpha-1/2) f(x),  f = omega C(x)^2 (1-x^2)^(mu_lo),
// with integral of p over [-1,1] equal to 1.
struct AngularFactor {
    alpha: f64,
    lam: f64,
    deg: u32,
    ln_omega: f64,
    mu_lo: f64,
}

impl AngularFactor {
    fn new(dim: u32, j: u32, hi: i64, lo: i64) -> Self {
        let alpha = (dim as f64 - j as f64 - 1.0) / 2.0;
        Self {
            alpha,
            lam: alpha + lo as f64,
            deg: (hi - lo) as u32,
            ln_omega: hydrogenic::ln_omega(alpha, hi as f64, lo as f64),
            mu_lo: lo as f64,
        }
    }

    fn ln_f(&self, x: f64, om: f64) -> Option<f64> {
        let c = specfun::eval_raw(PolyFamily::GegenbauerC, self.deg, self.lam, x);
        if c == 0.0 || !c.is_finite() {
            return None;
        }
        Some(self.ln_omega + 2.0 * c.abs().ln() + self.mu_lo * om.ln())
    }

    fn breakpoints(&self) -> Result<Vec<f64>, Error> {
        if self.deg == 0 {
            Ok(Vec::new())
        } else {
            specfun::poly_roots(&PolynomialSpec::gegenbauer(self.deg, self.lam)?)
        }
    }
}

fn chain_factors(dim: u32, chain: &[i64]) -> Vec<AngularFactor> {
    (0..dim.saturating_sub(2) as usize)
        .map(|idx| AngularFactor::new(dim, idx as u32 + 1, chain[idx], chain[idx + 1]))
        .collect()
}

/// -integral of |Y|^2 ln |Y|^2 over the hypersphere by factorized direct
/// quadrature: ln 2 pi from the uniform azimuth plus one 1D integral per
/// chain link. Built without the closed-form boundary-coefficient identity.
pub fn angular_entropy_oracle(
    state: &QuantumState,
    config: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    hydrogenic::validate_and_derive(state)?;
    let chain = state.canonical_chain();
    let mut value = (2.0 * PI).ln();
    let mut err = 0.0;
    let mut subdivisions = 0;
    let mut converged = true;
    for fac in chain_factors(state.dim, &chain) {
        let bps = fac.breakpoints()?;
        let domain = Interval::Finite { a: -1.0, b: 1.0 };
        let density = |x: f64| -> f64 {
            let om = 1.0 - x * x;
            if om <= 0.0 {
                return 0.0;
            }
            match fac.ln_f(x, om) {
                Some(lf) => ((fac.alpha - 0.5) * om.ln() + lf).exp(),
                None => 0.0,
            }
        };
        let norm = quad::integrate_adaptive(&density, domain, &bps, config)?;
        check_norm("angular oracle factor normalization", norm.value, config)?;
        let res = quad::integrate_adaptive(
            &|x: f64| -> f64 {
                let om = 1.0 - x * x;
                if om <= 0.0 {
                    return 0.0;
                }
                match fac.ln_f(x, om) {
                    Some(lf) => {
                        let p = ((fac.alpha - 0.5) * om.ln() + lf).exp();
                        if p == 0.0 {
                            0.0
                        } else {
                            p * lf
                        }
                    }
                    None => 0.0,
                }
            },
            domain,
            &bps,
            config,
        )?;
        value -= res.value;
        err += res.error_estimate;
        subdivisions += res.subdivisions;
        converged &= res.converged;
    }
    Ok(IntegralResult { value, error_estimate: err, subdivisions, converged })
}

/// The angular entropic moment integral for real order q >= 1, factorized
/// the same way. The closed product form only exists at integer q; this
/// integral is smooth in q and anchors the q-derivative route.
pub fn lambda_q_oracle(
    state: &QuantumState,
    q: f64,
    config: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    hydrogenic::validate_and_derive(state)?;
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("moment order must satisfy q >= 1, got {q}")));
    }
    lambda_q_chain(state.dim, &state.canonical_chain(), q, config)
}

// Shared with the entropy module's q-derivative, which needs q slightly
// below 1 as well; any positive q integrates fine.
pub(crate) fn lambda_q_chain(
    dim: u32,
    chain: &[i64],
    q: f64,
    config: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    let mut value = ((1.0 - q) * (2.0 * PI).ln()).exp();
    let mut rel_err = 0.0;
    let mut subdivisions = 0;
    let mut converged = true;
    for fac in chain_factors(dim, chain) {
        let bps = fac.breakpoints()?;
        let res = quad::integrate_adaptive(
            &|x: f64| -> f64 {
                let om = 1.0 - x * x;
                if om <= 0.0 {
                    return 0.0;
                }
                match fac.ln_f(x, om) {
                    Some(lf) => ((fac.alpha - 0.5) * om.ln() + q * lf).exp(),
                    None => 0.0,
                }
            },
            Interval::Finite { a: -1.0, b: 1.0 },
            &bps,
            config,
        )?;
        value *= res.value;
        if res.value != 0.0 {
            rel_err += res.error_estimate / res.value.abs();
        }
        subdivisions += res.subdivisions;
        converged &= res.converged;
    }
    Ok(IntegralResult {
        value,
        error_estimate: value.abs() * rel_err,
        subdivisions,
        converged,
    })
}

/// Tolerances for the cross-method report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckTolerances {
    pub radial: f64,
    pub angular: f64,
    pub moment: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        Self { radial: 1e-8, angular: 1e-6, moment: 1e-9 }
    }
}

/// One pairwise comparison inside a cross-check report.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDiff {
    pub quantity: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub left: f64,
    pub right: f64,
    pub diff: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Structured outcome of running every applicable method on one state.
/// Failures of individual methods are recorded in `notes` and fail the
/// report; they are never raised as errors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CrossCheckReport {
    pub valid: bool,
    pub pass: bool,
    pub values: Vec<(&'static str, f64)>,
    pub pairs: Vec<PairDiff>,
    pub notes: Vec<String>,
}

impl CrossCheckReport {
    fn note_err(&mut self, what: &str, e: &Error) {
        self.notes.push(format!("{what}: {e}"));
        self.pass = false;
    }

    fn push_pair(
        &mut self,
        quantity: &'static str,
        lhs: &'static str,
        rhs: &'static str,
        left: f64,
        right: f64,
        tolerance: f64,
    ) {
        let diff = (left - right).abs();
        let pass = diff <= tolerance;
        if !pass {
            self.pass = false;
        }
        self.pairs.push(PairDiff { quantity, lhs, rhs, left, right, diff, tolerance, pass });
    }
}

/// Runs every route that applies to the state and reports the pairwise
/// differences against the tolerances.
pub fn cross_check(state: &QuantumState, tolerances: &CheckTolerances) -> CrossCheckReport {
    let mut rep = CrossCheckReport { valid: true, pass: true, ..Default::default() };
    if let Err(e) = hydrogenic::validate_and_derive(state) {
        rep.valid = false;
        rep.pass = false;
        rep.notes.push(format!("state validation: {e}"));
        return rep;
    }
    let cfg = QuadratureConfig::default();

    // radial: closed vs oracle, plus the circular fast path when it applies
    let closed = match entropy::radial_entropy_closed_with(state, &cfg) {
        Ok((v, _)) => {
            rep.values.push(("radial closed", v));
            Some(v)
        }
        Err(e) => {
            rep.note_err("radial closed", &e);
            None
        }
    };
    let rad_oracle = match radial_entropy_oracle(state, &cfg) {
        Ok(r) if r.converged => {
            rep.values.push(("radial oracle", r.value));
            Some(r.value)
        }
        Ok(r) => {
            rep.notes.push(format!(
                "radial oracle did not converge (error estimate {:.3e})",
                r.error_estimate
            ));
            rep.pass = false;
            None
        }
        Err(e) => {
            rep.note_err("radial oracle", &e);
            None
        }
    };
    if let (Some(a), Some(b)) = (closed, rad_oracle) {
        rep.push_pair("radial", "closed", "oracle", a, b, tolerances.radial);
    }
    if state.l() == state.n - 1 {
        match entropy::radial_entropy_special(state) {
            Ok(v) => {
                rep.values.push(("radial special", v));
                if let Some(c) = closed {
                    rep.push_pair("radial", "special", "closed", v, c, tolerances.radial);
                }
            }
            Err(e) => rep.note_err("radial special", &e),
        }
    }

    // angular: both methods vs oracle, plus the all-equal fast path
    let ang_a = match entropy::angular_entropy_gegenbauer_with(state, &cfg) {
        Ok((v, _)) => {
            rep.values.push(("angular gegenbauer", v));
            Some(v)
        }
        Err(e) => {
            rep.note_err("angular gegenbauer", &e);
            None
        }
    };
    let ang_b = match entropy::angular_entropy_from_moments(state) {
        Ok(v) => {
            rep.values.push(("angular moment-derivative", v));
            Some(v)
        }
        Err(e) => {
            rep.note_err("angular moment-derivative", &e);
            None
        }
    };
    let ang_oracle = match angular_entropy_oracle(state, &cfg) {
        Ok(r) if r.converged => {
            rep.values.push(("angular oracle", r.value));
            Some(r.value)
        }
        Ok(_) => {
            rep.notes.push("angular oracle did not converge".into());
            rep.pass = false;
            None
        }
        Err(e) => {
            rep.note_err("angular oracle", &e);
            None
        }
    };
    if let (Some(a), Some(b)) = (ang_a, ang_b) {
        rep.push_pair("angular", "gegenbauer", "moment-derivative", a, b, tolerances.angular);
    }
    if let (Some(a), Some(o)) = (ang_a, ang_oracle) {
        rep.push_pair("angular", "gegenbauer", "oracle", a, o, tolerances.angular);
    }
    if let (Some(b), Some(o)) = (ang_b, ang_oracle) {
        rep.push_pair("angular", "moment-derivative", "oracle", b, o, tolerances.angular);
    }
    let chain = state.canonical_chain();
    if chain.iter().all(|&c| c == state.l() as i64) {
        match entropy::angular_entropy_special(state) {
            Ok(v) => {
                rep.values.push(("angular special", v));
                if let Some(a) = ang_a {
                    rep.push_pair("angular", "special", "gegenbauer", v, a, tolerances.angular);
                }
            }
            Err(e) => rep.note_err("angular special", &e),
        }
    }

    // moments: closed normalization at q=1, closed vs integrated at q=2
    match hypersum::entropic_moment(state, 1) {
        Ok(v) => {
            rep.values.push(("moment q=1 closed", v));
            rep.push_pair("moment q=1", "closed", "exact 1", v, 1.0, tolerances.moment);
        }
        Err(e) => rep.note_err("moment q=1 closed", &e),
    }
    let m2 = match hypersum::entropic_moment(state, 2) {
        Ok(v) => {
            rep.values.push(("moment q=2 closed", v));
            Some(v)
        }
        Err(e) => {
            rep.note_err("moment q=2 closed", &e);
            None
        }
    };
    let m2o = match lambda_q_oracle(state, 2.0, &cfg) {
        Ok(r) if r.converged => {
            rep.values.push(("moment q=2 oracle", r.value));
            Some(r.value)
        }
        Ok(_) => {
            rep.notes.push("moment oracle did not converge".into());
            rep.pass = false;
            None
        }
        Err(e) => {
            rep.note_err("moment q=2 oracle", &e);
            None
        }
    };
    if let (Some(a), Some(b)) = (m2, m2o) {
        rep.push_pair("moment q=2", "closed", "oracle", a, b, tolerances.moment);
    }

    rep
}
