//! Closed-form Shannon entropies of hydrogenic densities: the radial form
//! built on the quadratic Laguerre coefficient sums plus one logarithmic
//! Kummer integral, two independent angular routes, special-family fast
//! paths, totals, and the large-n / large-D asymptotic evaluators.

use num_rational::BigRational;

use crate::error::Error;
use crate::hydrogenic::{self, QuantumState};
use crate::hypersum;
use crate::oracle;
use crate::quad::{self, QuadratureConfig};
use crate::specfun::{self, PolynomialSpec};

const LN_2: f64 = std::f64::consts::LN_2;
const PI: f64 = std::f64::consts::PI;

/// Which route produced an EntropyResult.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Oracle,
    SpecialCase,
    Asymptote,
}

/// Radial + angular entropies and their sum, with per-part error estimates
/// (zero for purely analytic paths).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult {
    pub radial: f64,
    pub angular: f64,
    pub total: f64,
    pub method: Method,
    pub radial_err: f64,
    pub angular_err: f64,
}

/// Large-parameter regimes with closed leading-order expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticRegime {
    RydbergRadial,
    HighDRadial,
    HighDAngular,
    HighDTotalQuasiSpherical,
    HighDTotalConjecture,
}

// Degree above which the alternating coefficient sums leave f64 and go
// through exact rationals. At m = 12 the float grid still carries ~1e-12
// relative error; beyond that cancellation grows a decade per step or so.
const EXACT_SUM_THRESHOLD: u32 = 12;

/// The three auxiliary integrals of the radial closed form, as plain floats:
/// with P = (n-l)_(2l+D-2) and the coefficient grid c_ij,
/// I1 = P^2 sum c, I2 = P^2 sum c psi(e), I3 = P^2 sum c e,
/// where e_ij = 2l + D + i + j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialAux {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

/// Exact-rational counterpart. psi(e) = H_(e-1) - gamma is transcendental,
/// so I2 splits: I2 = i2_harmonic - gamma * i1 with both parts rational.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialAuxExact {
    pub i1: BigRational,
    pub i2_harmonic: BigRational,
    pub i3: BigRational,
}

fn check_nld(n: u32, l: u32, dim: u32) -> Result<(), Error> {
    if dim < 2 || n < 1 || l > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "need dim >= 2, n >= 1, l <= n-1; got n={n} l={l} dim={dim}"
        )));
    }
    Ok(())
}

pub fn radial_aux_integrals(n: u32, l: u32, dim: u32) -> Result<RadialAux, Error> {
    check_nld(n, l, dim)?;
    let ln_p = ln_pochhammer_p(n, l, dim);
    let scale = (2.0 * ln_p).exp();
    if n - l - 1 <= EXACT_SUM_THRESHOLD {
        let s = hypersum::cij_sums_float(n, l, dim);
        Ok(RadialAux { i1: scale * s.s_c, i2: scale * s.s_c_psi, i3: scale * s.s_c_e })
    } else {
        let e = hypersum::cij_sums_exact(n, l, dim);
        let p2 = &e.p * &e.p;
        let i1 = hypersum::rat_to_f64(&(&p2 * &e.s_c));
        let i2 = hypersum::rat_to_f64(&(&p2 * &e.s_c_h)) - specfun::EULER_GAMMA * i1;
        let i3 = hypersum::rat_to_f64(&(&p2 * &e.s_c_e));
        Ok(RadialAux { i1, i2, i3 })
    }
}

pub fn radial_aux_integrals_exact(n: u32, l: u32, dim: u32) -> Result<RadialAuxExact, Error> {
    check_nld(n, l, dim)?;
    let e = hypersum::cij_sums_exact(n, l, dim);
    let p2 = &e.p * &e.p;
    Ok(RadialAuxExact {
        i1: &p2 * &e.s_c,
        i2_harmonic: &p2 * &e.s_c_h,
        i3: &p2 * &e.s_c_e,
    })
}

// ln P with P = (n-l)_(2l+D-2) = Gamma(n+l+D-2) / Gamma(n-l)
fn ln_pochhammer_p(n: u32, l: u32, dim: u32) -> f64 {
    specfun::log_gamma_half(2 * (n + l + dim - 2)) - specfun::log_gamma_half(2 * (n - l))
}

/// Radial Shannon entropy by the closed form, default quadrature.
pub fn radial_entropy_closed(state: &QuantumState) -> Result<f64, Error> {
    radial_entropy_closed_with(state, &QuadratureConfig::default()).map(|(v, _)| v)
}

/// Closed-form radial entropy with an explicit quadrature budget for the
/// logarithmic Kummer integral; returns (value, error estimate).
///
/// Assembly, with b = 2l+D-1, eta = n+(D-3)/2, P = (n-l)_(2l+D-2),
/// e_ij = 2l+D+i+j and the coefficient sums S_c, S_cpsi, S_ce:
///
///   S = -[K0 + (2l S_cpsi - S_ce)/S_c] - Itilde exp(ln P - ln 2eta - 2 ln Gamma(b))
///   K0 = D ln(2Z/eta) + ln P - ln 2eta - 2 ln Gamma(b)
///
/// using the exact identity P S_c = 2 eta to keep every factor in range even
/// for Rydberg-scale n where P alone overflows.
pub fn radial_entropy_closed_with(
    state: &QuantumState,
    config: &QuadratureConfig,
) -> Result<(f64, f64), Error> {
    hydrogenic::validate_and_derive(state)?;
    let (n, l, dim) = (state.n, state.l(), state.dim);
    let df = dim as f64;
    let lf = l as f64;
    let eta = (2 * n + dim - 3) as f64 / 2.0;
    let b = 2 * l + dim - 1;

    let it = quad::kummer_log_integral(n, l, dim, config)?;
    if !it.converged {
        return Err(Error::NonConvergent {
            context: "logarithmic Kummer integral of the radial closed form".into(),
            value: it.value,
            error_estimate: it.error_estimate,
            tolerance: config.abs_tol.max(config.rel_tol * it.value.abs()),
        });
    }

    let ln_p = ln_pochhammer_p(n, l, dim);
    let ln_gb = specfun::log_gamma_half(2 * b);
    let k0 = df * (2.0 * state.charge / eta).ln() + ln_p - (2.0 * eta).ln() - 2.0 * ln_gb;

    let ratio = if n - l - 1 <= EXACT_SUM_THRESHOLD {
        let s = hypersum::cij_sums_float(n, l, dim);
        (2.0 * lf * s.s_c_psi - s.s_c_e) / s.s_c
    } else {
        let e = hypersum::cij_sums_exact(n, l, dim);
        let two_l = BigRational::from_integer((2 * l as i64).into());
        let r = (&two_l * &e.s_c_h - &e.s_c_e) / &e.s_c;
        hypersum::rat_to_f64(&r) - 2.0 * lf * specfun::EULER_GAMMA
    };

    let tail_weight = (ln_p - (2.0 * eta).ln() - 2.0 * ln_gb).exp();
    let value = -(k0 + ratio) - it.value * tail_weight;
    let err = it.error_estimate * tail_weight;
    Ok((value, err))
}

/// Fast path for the circular family l = n-1 (which contains the ground
/// state): S = D ln(eta/2) + (2 eta + 1) + ln Gamma(2 eta + 1)
///            - 2(n-1) psi(2 eta + 1) - D ln Z.
pub fn radial_entropy_special(state: &QuantumState) -> Result<f64, Error> {
    hydrogenic::validate_and_derive(state)?;
    if state.l() != state.n - 1 {
        return Err(Error::NotSpecialCase(format!(
            "radial fast path needs l = n-1, got l={} n={}",
            state.l(),
            state.n
        )));
    }
    let (n, dim) = (state.n, state.dim);
    let df = dim as f64;
    let eta = (2 * n + dim - 3) as f64 / 2.0;
    // 2 eta + 1 = 2n + D - 2, an integer
    let g = 2 * n + dim - 2;
    Ok(df * (eta / 2.0).ln() + (2.0 * eta + 1.0) + specfun::log_gamma_half(2 * g)
        - 2.0 * (n as f64 - 1.0) * specfun::digamma_half(2 * g)
        - df * state.charge.ln())
}

/// Angular entropy, method A: the digamma boundary term plus one
/// logarithmic Gegenbauer functional per chain link. Default quadrature.
pub fn angular_entropy_gegenbauer(state: &QuantumState) -> Result<f64, Error> {
    angular_entropy_gegenbauer_with(state, &QuadratureConfig::default()).map(|(v, _)| v)
}

pub fn angular_entropy_gegenbauer_with(
    state: &QuantumState,
    config: &QuadratureConfig,
) -> Result<(f64, f64), Error> {
    hydrogenic::validate_and_derive(state)?;
    if state.dim == 2 {
        return Ok(((2.0 * PI).ln(), 0.0));
    }
    let chain = state.canonical_chain();
    let mut value = (2.0 * PI).ln();
    let mut err = 0.0;
    for idx in 0..(state.dim - 2) as usize {
        let j = idx as u32 + 1;
        let hi = chain[idx];
        let lo = chain[idx + 1];
        // two_alpha = D - j - 1
        let two_alpha = state.dim - j - 1;
        let alpha = two_alpha as f64 / 2.0;
        // boundary term: -2 mu_lo [psi(2a+hi+lo) - psi(a+hi) - ln 2 - 1/(2(a+hi))]
        let psi_big = specfun::digamma_half(2 * (two_alpha as i64 + hi + lo) as u32);
        let psi_half = specfun::digamma_half((two_alpha as i64 + 2 * hi) as u32);
        value -= 2.0 * lo as f64
            * (psi_big - psi_half - LN_2 - 1.0 / (2.0 * (alpha + hi as f64)));
        let spec = PolynomialSpec::gegenbauer((hi - lo) as u32, alpha + lo as f64)?;
        let e = quad::poly_entropy_e(&spec, config)?;
        if !e.converged {
            return Err(Error::NonConvergent {
                context: format!("Gegenbauer entropy functional at chain link {j}"),
                value: e.value,
                error_estimate: e.error_estimate,
                tolerance: config.abs_tol.max(config.rel_tol * e.value.abs()),
            });
        }
        value += e.value;
        err += e.error_estimate;
    }
    Ok((value, err))
}

/// Angular entropy, method B: minus the derivative of the angular entropic
/// moment Lambda(q) at q = 1, by central differences over a halving h
/// sequence with two Richardson stages. Lambda is integrated directly for
/// real q, which sidesteps the integer-only closed moment product.
pub fn angular_entropy_from_moments(state: &QuantumState) -> Result<f64, Error> {
    angular_entropy_from_moments_with(state, &QuadratureConfig::tight()).map(|(v, _)| v)
}

pub fn angular_entropy_from_moments_with(
    state: &QuantumState,
    config: &QuadratureConfig,
) -> Result<(f64, f64), Error> {
    hydrogenic::validate_and_derive(state)?;
    let chain = state.canonical_chain();
    let hs = [1e-3, 5e-4, 2.5e-4];
    let mut d = [0.0f64; 3];
    for (i, &h) in hs.iter().enumerate() {
        let plus = oracle::lambda_q_chain(state.dim, &chain, 1.0 + h, config)?;
        let minus = oracle::lambda_q_chain(state.dim, &chain, 1.0 - h, config)?;
        for r in [&plus, &minus] {
            if !r.converged {
                return Err(Error::NonConvergent {
                    context: "entropic moment quadrature for the q-derivative".into(),
                    value: r.value,
                    error_estimate: r.error_estimate,
                    tolerance: config.abs_tol.max(config.rel_tol * r.value.abs()),
                });
            }
        }
        d[i] = (plus.value - minus.value) / (2.0 * h);
    }
    let r1 = [(4.0 * d[1] - d[0]) / 3.0, (4.0 * d[2] - d[1]) / 3.0];
    let r2 = (16.0 * r1[1] - r1[0]) / 15.0;
    let value = -r2;
    let err = (r1[1] - r1[0]).abs();
    // refinement must have settled well inside the cross-method budget
    let budget = 1e-6 * value.abs().max(1.0);
    if err > budget {
        return Err(Error::NonConvergent {
            context: "q-derivative refinement failed to settle".into(),
            value,
            error_estimate: err,
            tolerance: budget,
        });
    }
    Ok((value, err))
}

/// Fast path for the two angular families with fully closed entropy:
/// the all-equal chain mu_1 = .. = |m| = l, and s-states (l = 0).
/// S = ln(2 pi^(D/2)) + l [psi(l+D/2) - psi(l+1)] + ln(Gamma(l+1)/Gamma(l+D/2)).
pub fn angular_entropy_special(state: &QuantumState) -> Result<f64, Error> {
    hydrogenic::validate_and_derive(state)?;
    let chain = state.canonical_chain();
    let l = state.l();
    if !chain.iter().all(|&c| c == l as i64) {
        return Err(Error::NotSpecialCase(
            "angular fast path needs an all-equal chain (which includes every s-state)".into(),
        ));
    }
    let (dim, lf) = (state.dim, l as f64);
    Ok(LN_2 + (dim as f64 / 2.0) * PI.ln()
        + lf * (specfun::digamma_half(2 * l + dim) - specfun::digamma_half(2 * l + 2))
        + specfun::log_gamma_half(2 * l + 2)
        - specfun::log_gamma_half(2 * l + dim))
}

/// Radial + angular + total by the selected route. `Asymptote` is not a
/// per-state route; use `asymptote` with an explicit regime instead.
pub fn total_entropy(state: &QuantumState, method: Method) -> Result<EntropyResult, Error> {
    match method {
        Method::ClosedForm => {
            let cfg = QuadratureConfig::default();
            let (radial, radial_err) = radial_entropy_closed_with(state, &cfg)?;
            let (angular, angular_err) = angular_entropy_gegenbauer_with(state, &cfg)?;
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
            let cfg = QuadratureConfig::default();
            let r = oracle::radial_entropy_oracle(state, &cfg)?;
            let a = oracle::angular_entropy_oracle(state, &cfg)?;
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
        Method::SpecialCase => {
            let radial = radial_entropy_special(state)?;
            let angular = angular_entropy_special(state)?;
            Ok(EntropyResult {
                radial,
                angular,
                total: radial + angular,
                method,
                radial_err: 0.0,
                angular_err: 0.0,
            })
        }
        Method::Asymptote => Err(Error::InvalidArgument(
            "asymptotic totals need a regime; call `asymptote` directly".into(),
        )),
    }
}

/// Total entropy of the quasi-spherical family mu_1 = .. = mu_{D-1} = n-1,
/// fully closed:
///
/// ```text
/// D ln(e sqrt(pi) eta / 2) + ln(2 Gamma(2 eta + 1) / (n)_(D/2-1)) + (n-1) C - D ln Z
/// C = psi(eta + 1/2) - psi(n) - 2 psi(2 eta + 1) + 2
/// ```
pub fn total_quasi_spherical(state: &QuantumState) -> Result<f64, Error> {
    hydrogenic::validate_and_derive(state)?;
    if !state.is_quasi_spherical() {
        return Err(Error::NotSpecialCase(format!(
            "quasi-spherical total needs every mu equal to n-1 = {}",
            state.n - 1
        )));
    }
    let (n, dim) = (state.n, state.dim);
    let df = dim as f64;
    let eta = (2 * n + dim - 3) as f64 / 2.0;
    // integer two_x arguments: eta + 1/2 = (2n+D-2)/2, 2 eta + 1 = 2n+D-2,
    // (n)_(D/2-1) = Gamma(n + D/2 - 1) / Gamma(n)
    let c = specfun::digamma_half(2 * n + dim - 2) - specfun::digamma_half(2 * n)
        - 2.0 * specfun::digamma_half(2 * (2 * n + dim - 2))
        + 2.0;
    Ok(df * (1.0 + 0.5 * PI.ln() + (eta / 2.0).ln()) + LN_2
        + specfun::log_gamma_half(2 * (2 * n + dim - 2))
        - (specfun::log_gamma_half(2 * n + dim - 2) - specfun::log_gamma_half(2 * n))
        + (n as f64 - 1.0) * c
        - df * state.charge.ln())
}

/// Leading-order closed asymptotics. Every regime takes the full (n, D, Z)
/// triple; regimes that do not depend on one of them ignore it.
pub fn asymptote(regime: AsymptoticRegime, n: u32, dim: u32, charge: f64) -> Result<f64, Error> {
    if dim < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "asymptotic regimes need dim >= 2 and n >= 1, got dim={dim} n={n}"
        )));
    }
    if !(charge > 0.0) || !charge.is_finite() {
        return Err(Error::InvalidArgument(format!("charge must be positive, got {charge}")));
    }
    let df = dim as f64;
    let nf = n as f64;
    let lnz = charge.ln();
    Ok(match regime {
        AsymptoticRegime::RydbergRadial => {
            2.0 * df * nf.ln() + (2.0 - df) * LN_2 + PI.ln() + df - 3.0 - df * lnz
        }
        AsymptoticRegime::HighDRadial => 2.0 * df * df.ln() - df * (4.0 * charge).ln(),
        AsymptoticRegime::HighDAngular => {
            -specfun::log_gamma_half(dim) + (df / 2.0) * PI.ln()
        }
        AsymptoticRegime::HighDTotalQuasiSpherical => {
            let a = (dim + 2 * n - 3) as f64;
            let b = (dim + 2 * n - 2) as f64;
            df * (a * b.sqrt()).ln() + df * (PI * std::f64::consts::E / 8.0).sqrt().ln()
                - ((nf - 1.0) * (nf.ln() - 1.0) + 0.5 * LN_2)
                - df * lnz
        }
        AsymptoticRegime::HighDTotalConjecture => {
            2.0 * df * df.ln() - specfun::log_gamma_half(dim)
                + df * (0.5 * PI.ln() - 2.0 * LN_2 - lnz)
        }
    })
}
