//! State model for a D-dimensional hydrogenic system: quantum-number
//! validation, derived parameters, and pointwise density factors.

use crate::error::{Error, StateError};
use crate::specfun::{self, PolyFamily};

/// A discrete stationary state (D, Z, n, mu_1..mu_{D-1}).
///
/// `mu[0]` is the orbital number l (for D = 2 its absolute value is), and the
/// last entry is the magnetic number m, the only one allowed to be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    pub dim: u32,
    pub charge: f64,
    pub n: u32,
    pub mu: Vec<i64>,
}

impl QuantumState {
    /// Builds and validates in one step.
    pub fn new(dim: u32, charge: f64, n: u32, mu: Vec<i64>) -> Result<Self, Error> {
        let s = Self { dim, charge, n, mu };
        validate_and_derive(&s)?;
        Ok(s)
    }

    /// The s-state (all mu zero) for a given shell.
    pub fn s_state(dim: u32, charge: f64, n: u32) -> Result<Self, Error> {
        Self::new(dim, charge, n, vec![0; dim.saturating_sub(1) as usize])
    }

    /// The quasi-spherical state, mu_j = n-1 throughout.
    pub fn quasi_spherical(dim: u32, charge: f64, n: u32) -> Result<Self, Error> {
        Self::new(dim, charge, n, vec![n as i64 - 1; dim.saturating_sub(1) as usize])
    }

    /// Orbital quantum number l.
    pub fn l(&self) -> u32 {
        if self.dim == 2 {
            self.mu.first().map_or(0, |m| m.unsigned_abs() as u32)
        } else {
            self.mu.first().copied().unwrap_or(0).max(0) as u32
        }
    }

    /// Magnetic quantum number m (signed).
    pub fn m(&self) -> i64 {
        self.mu.last().copied().unwrap_or(0)
    }

    /// |m|; every formula consumes the modulus.
    pub fn m_abs(&self) -> u32 {
        self.m().unsigned_abs() as u32
    }

    /// The chain (mu_1, .., mu_{D-2}, |m|) every angular formula runs on.
    pub fn canonical_chain(&self) -> Vec<i64> {
        canonical_chain(&self.mu)
    }

    /// True when l = n-1 and the whole chain sits at n-1.
    pub fn is_quasi_spherical(&self) -> bool {
        let target = self.n as i64 - 1;
        self.l() as i64 == target && self.canonical_chain().iter().all(|&c| c == target)
    }
}

fn canonical_chain(mu: &[i64]) -> Vec<i64> {
    let mut c: Vec<i64> = mu.to_vec();
    if let Some(last) = c.last_mut() {
        *last = last.abs();
    }
    c
}

/// Validates a bare (dim, mu) chain without the radial quantum numbers;
/// angular quantities depend on nothing else.
pub(crate) fn validate_chain(dim: u32, mu: &[i64]) -> Result<Vec<i64>, Error> {
    if dim < 2 {
        return Err(StateError::DimensionTooSmall { dim }.into());
    }
    let expected = (dim - 1) as usize;
    if mu.len() != expected {
        return Err(StateError::MuLengthMismatch { expected, got: mu.len() }.into());
    }
    let c = canonical_chain(mu);
    if dim > 2 {
        for k in 0..c.len() - 1 {
            if c[k] < c[k + 1] {
                return Err(StateError::MuChainViolation {
                    position: k,
                    upper: mu[k],
                    lower: mu[k + 1],
                }
                .into());
            }
        }
        if c[0] < 0 {
            // only reachable with a negative mu_1 at D >= 3
            return Err(StateError::MuChainViolation { position: 0, upper: mu[0], lower: mu[1] }.into());
        }
    }
    Ok(c)
}

/// Everything the formulas derive from a state.
///
/// `nsq` and `nang_sq` are the squared radial and angular normalization
/// constants; `ln_nsq` and `ln_nang_sq` are their logs assembled directly
/// from log-gammas so large-D states cannot overflow on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedParams {
    pub eta: f64,
    pub lc: f64,
    pub lambda: f64,
    pub alpha: Vec<f64>,
    pub nsq: f64,
    pub nang_sq: f64,
    pub ln_nsq: f64,
    pub ln_nang_sq: f64,
}

/// Checks every state invariant and computes the derived parameters.
pub fn validate_and_derive(state: &QuantumState) -> Result<DerivedParams, Error> {
    let d = state.dim;
    if d < 2 {
        return Err(StateError::DimensionTooSmall { dim: d }.into());
    }
    if !(state.charge > 0.0) || !state.charge.is_finite() {
        return Err(StateError::ChargeNotPositive { charge: state.charge }.into());
    }
    if state.n < 1 {
        return Err(StateError::PrincipalTooSmall.into());
    }
    validate_chain(d, &state.mu)?;
    let l = state.l();
    if l > state.n - 1 {
        return Err(StateError::OrbitalOutOfRange { l, n: state.n }.into());
    }

    let df = d as f64;
    let nf = state.n as f64;
    let lf = l as f64;
    let eta = nf + (df - 3.0) / 2.0;
    let lc = lf + (df - 3.0) / 2.0;
    let lambda = eta / (2.0 * state.charge);

    let alpha: Vec<f64> = (1..=d.saturating_sub(2)).map(|j| (df - j as f64 - 1.0) / 2.0).collect();

    // N^2 lambda^D = (n-l-1)! / (2 eta (n+l+D-3)!)
    let ln_nsq = -df * lambda.ln() + specfun::log_gamma_half(2 * (state.n - l))
        - (2.0 * eta).ln()
        - specfun::log_gamma_half(2 * (state.n + l + d - 2));

    let chain = state.canonical_chain();
    let mut ln_nang = -(2.0 * std::f64::consts::PI).ln();
    for (idx, &a) in alpha.iter().enumerate() {
        let hi = chain[idx] as f64;
        let lo = chain[idx + 1] as f64;
        ln_nang += ln_omega(a, hi, lo);
    }

    Ok(DerivedParams {
        eta,
        lc,
        lambda,
        alpha,
        nsq: ln_nsq.exp(),
        nang_sq: ln_nang.exp(),
        ln_nsq,
        ln_nang_sq: ln_nang,
    })
}

// ln of the per-factor angular normalization
//   omega_j = (alpha+mu_hi) n_j! Gamma(lam)^2 2^(2 lam - 1) / (pi Gamma(2 lam + n_j)),
// lam = alpha + mu_lo, n_j = mu_hi - mu_lo.
pub(crate) fn ln_omega(alpha: f64, mu_hi: f64, mu_lo: f64) -> f64 {
    let lam = alpha + mu_lo;
    let nj = mu_hi - mu_lo;
    (alpha + mu_hi).ln() + specfun::log_gamma(nj + 1.0) + 2.0 * specfun::log_gamma(lam)
        + (2.0 * lam - 1.0) * std::f64::consts::LN_2
        - std::f64::consts::PI.ln()
        - specfun::log_gamma(2.0 * lam + nj)
}

/// The radial density factor rho(r) with r in real units; the full radial
/// probability measure is r^(D-1) rho(r) dr.
pub fn radial_density(state: &QuantumState, r: f64) -> Result<f64, Error> {
    let p = validate_and_derive(state)?;
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!("r must be nonnegative, got {r}")));
    }
    let l = state.l();
    let x = r / p.lambda;
    let lag = specfun::eval_raw(
        PolyFamily::LaguerreL,
        state.n - l - 1,
        2.0 * l as f64 + state.dim as f64 - 2.0,
        x,
    );
    let xl = if l == 0 { 1.0 } else { x.powi(2 * l as i32) };
    Ok(p.nsq * xl * (-x).exp() * lag * lag)
}

/// |Y(angles)|^2 with angles = (theta_1 .. theta_{D-2}, phi).
pub fn angular_density(state: &QuantumState, angles: &[f64]) -> Result<f64, Error> {
    let p = validate_and_derive(state)?;
    let d = state.dim as usize;
    if angles.len() != d - 1 {
        return Err(Error::InvalidArgument(format!(
            "need D-1 = {} angles (theta_1..theta_{}, phi), got {}",
            d - 1,
            d - 2,
            angles.len()
        )));
    }
    for (k, &th) in angles.iter().enumerate() {
        // theta_1..theta_{D-2} live on [0, pi], the azimuth phi on [0, 2 pi)
        let ok = if k < d - 2 {
            (0.0..=std::f64::consts::PI).contains(&th)
        } else {
            (0.0..2.0 * std::f64::consts::PI).contains(&th)
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("angle {k} out of range: {th}")));
        }
    }
    let chain = state.canonical_chain();
    let mut val = p.nang_sq;
    for idx in 0..d.saturating_sub(2) {
        let a = p.alpha[idx];
        let hi = chain[idx];
        let lo = chain[idx + 1];
        let lam = a + lo as f64;
        let theta = angles[idx];
        let c = specfun::eval_raw(PolyFamily::GegenbauerC, (hi - lo) as u32, lam, theta.cos());
        let s = theta.sin();
        let spow = if lo == 0 { 1.0 } else { s.powi(2 * lo as i32) };
        val *= c * c * spow;
    }
    Ok(val)
}
