//! Terminating multivariable hypergeometric sums at the unit point, the
//! quadratic Laguerre coefficient grid, and the closed-form entropic moments
//! built from them.
//!
//! Every series here terminates because at least one upper parameter per
//! variable is a nonpositive integer, so "evaluation" means exhaustive
//! enumeration of a finite index grid. Two backends: f64 with compensated
//! accumulation, and exact rationals for the grids where floating
//! cancellation is fatal (alternating terms spanning many orders).

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::hydrogenic::{self, QuantumState};
use crate::specfun::{self, KahanSum};

pub(crate) type Rat = Ratio<BigInt>;

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Exactly represents a parameter that must be a half-integer (2x integral).
fn rat_from_half(x: f64) -> Result<Rat, Error> {
    let t = 2.0 * x;
    if !t.is_finite() || (t - t.round()).abs() > 1e-9 || t.abs() > 9e15 {
        return Err(Error::InvalidArgument(format!(
            "rational backend requires half-integer parameters, got {x}"
        )));
    }
    Ok(Rat::new(BigInt::from(t.round() as i64), BigInt::from(2)))
}

/// Rounds a big rational to f64 without overflowing on huge numerators or
/// denominators: balance the bit lengths first, convert an ~80-bit integer
/// quotient, then undo the scaling in the exponent.
pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().abs();
    let k = n.bits() as i64 - d.bits() as i64;
    let s = 80 - k;
    let q: BigInt = if s >= 0 { (n << s as u64) / d } else { n / (d << (-s) as u64) };
    // two-step scaling: powi alone computes 1/2^|s| and hits inf (making the
    // reciprocal 0) once |s| is past the f64 exponent range, although the
    // final value, subnormals included, is still representable
    let (h1, h2) = (-s / 2, -s + s / 2);
    let v = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(h1 as i32) * 2f64.powi(h2 as i32);
    if neg {
        -v
    } else {
        v
    }
}

// Termination bound for one variable: the most negative nonpositive-integer
// upper parameter gives the last nonzero term index.
fn term_bound(uppers: &[f64], var: usize) -> Result<u32, Error> {
    let mut best: Option<u32> = None;
    for &a in uppers {
        if a <= 0.0 && (a - a.round()).abs() < 1e-9 {
            let m = (-a.round()) as u32;
            best = Some(best.map_or(m, |b| b.min(m)));
        }
    }
    best.ok_or_else(|| {
        Error::NonTerminating(format!(
            "variable {var} has no nonpositive-integer upper parameter; the series does not terminate"
        ))
    })
}

fn check_lower_admissible(c: f64, reach: u32, what: &str) -> Result<(), Error> {
    if c <= 0.0 && (c - c.round()).abs() < 1e-9 && (-c.round()) as u32 <= reach {
        return Err(Error::InvalidArgument(format!(
            "{what} parameter {c} hits a pole inside the summation range"
        )));
    }
    Ok(())
}

/// Lauricella F_A-type sum at unit arguments: one shared numerator parameter
/// `a` coupled across variables, one (b_k, c_k) pair per variable, all
/// b_k nonpositive integers.
#[derive(Debug, Clone, PartialEq)]
pub struct LauricellaSpec {
    pub a: f64,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl LauricellaSpec {
    fn bounds(&self) -> Result<Vec<u32>, Error> {
        if self.b.len() != self.c.len() || self.b.is_empty() {
            return Err(Error::InvalidArgument(
                "need matching, nonempty b and c parameter lists".into(),
            ));
        }
        let mut ms = Vec::with_capacity(self.b.len());
        for (k, &b) in self.b.iter().enumerate() {
            let m = term_bound(&[b], k)?;
            check_lower_admissible(self.c[k], m, "lower")?;
            ms.push(m);
        }
        Ok(ms)
    }
}

/// Sum of the terminating Lauricella-type series at the all-ones point.
pub fn lauricella_fa_unit(spec: &LauricellaSpec) -> Result<f64, Error> {
    let ms = spec.bounds()?;
    let smax: usize = ms.iter().map(|&m| m as usize).sum();
    let mut shared = vec![1.0; smax + 1];
    for s in 1..=smax {
        shared[s] = shared[s - 1] * (spec.a + (s - 1) as f64);
    }
    let mut phi: Vec<Vec<f64>> = Vec::with_capacity(ms.len());
    for (k, &m) in ms.iter().enumerate() {
        let mut col = vec![1.0; m as usize + 1];
        for j in 1..=m as usize {
            let jf = j as f64;
            col[j] = col[j - 1] * (spec.b[k] + jf - 1.0) / ((spec.c[k] + jf - 1.0) * jf);
        }
        phi.push(col);
    }
    let mut acc = KahanSum::new();
    grid_sum_f64(&phi, &shared, 0, 1.0, 0, &mut acc);
    Ok(acc.value())
}

fn grid_sum_f64(
    phi: &[Vec<f64>],
    shared: &[f64],
    k: usize,
    prod: f64,
    s: usize,
    acc: &mut KahanSum,
) {
    if k == phi.len() {
        acc.add(prod * shared[s]);
        return;
    }
    for (j, &p) in phi[k].iter().enumerate() {
        grid_sum_f64(phi, shared, k + 1, prod * p, s + j, acc);
    }
}

fn grid_sum_rat(phi: &[Vec<Rat>], shared: &[Rat], k: usize, prod: &Rat, s: usize, acc: &mut Rat) {
    if k == phi.len() {
        *acc += prod * &shared[s];
        return;
    }
    for (j, p) in phi[k].iter().enumerate() {
        grid_sum_rat(phi, shared, k + 1, &(prod * p), s + j, acc);
    }
}

/// Exact-rational evaluation of the same sum; parameters must be
/// half-integers.
pub fn lauricella_fa_unit_rational(spec: &LauricellaSpec) -> Result<Rat, Error> {
    let ms = spec.bounds()?;
    let smax: usize = ms.iter().map(|&m| m as usize).sum();
    let a = rat_from_half(spec.a)?;
    let mut shared = vec![Rat::from_integer(BigInt::from(1)); smax + 1];
    for s in 1..=smax {
        let next = &shared[s - 1] * (&a + rat_int(s as i64 - 1));
        shared[s] = next;
    }
    let mut phi: Vec<Vec<Rat>> = Vec::with_capacity(ms.len());
    for (k, &m) in ms.iter().enumerate() {
        let b = rat_from_half(spec.b[k])?;
        let c = rat_from_half(spec.c[k])?;
        let mut col = vec![Rat::from_integer(BigInt::from(1)); m as usize + 1];
        for j in 1..=m as usize {
            let jf = rat_int(j as i64);
            let next = &col[j - 1] * (&b + rat_int(j as i64 - 1))
                / ((&c + rat_int(j as i64 - 1)) * jf);
            col[j] = next;
        }
        phi.push(col);
    }
    let mut acc = Rat::from_integer(BigInt::from(0));
    grid_sum_rat(&phi, &shared, 0, &Rat::from_integer(BigInt::from(1)), 0, &mut acc);
    Ok(acc)
}

/// Srivastava-Daoust-type sum at unit arguments: coupled ratio
/// (a0)_s / (b0)_s at total degree s, and per variable two coupled-free
/// numerator parameters over one denominator parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SrivastavaDaoustSpec {
    pub a0: f64,
    pub b0: f64,
    /// per-variable numerator pairs; at least one entry of each pair must be
    /// a nonpositive integer for the sum to terminate
    pub upper: Vec<(f64, f64)>,
    /// per-variable denominator parameter
    pub lower: Vec<f64>,
}

impl SrivastavaDaoustSpec {
    fn bounds(&self) -> Result<Vec<u32>, Error> {
        if self.upper.len() != self.lower.len() || self.upper.is_empty() {
            return Err(Error::InvalidArgument(
                "need matching, nonempty upper and lower parameter lists".into(),
            ));
        }
        let mut ms = Vec::with_capacity(self.upper.len());
        for (k, &(u1, u2)) in self.upper.iter().enumerate() {
            let m = term_bound(&[u1, u2], k)?;
            check_lower_admissible(self.lower[k], m, "per-variable lower")?;
            ms.push(m);
        }
        let smax: u32 = ms.iter().sum();
        check_lower_admissible(self.b0, smax, "coupled lower")?;
        Ok(ms)
    }
}

/// Sum of the terminating Srivastava-Daoust-type series at the all-ones point.
pub fn srivastava_daoust_unit(spec: &SrivastavaDaoustSpec) -> Result<f64, Error> {
    let ms = spec.bounds()?;
    let smax: usize = ms.iter().map(|&m| m as usize).sum();
    let mut shared = vec![1.0; smax + 1];
    for s in 1..=smax {
        let sf = (s - 1) as f64;
        shared[s] = shared[s - 1] * (spec.a0 + sf) / (spec.b0 + sf);
    }
    let mut phi: Vec<Vec<f64>> = Vec::with_capacity(ms.len());
    for (k, &m) in ms.iter().enumerate() {
        let (u1, u2) = spec.upper[k];
        let mut col = vec![1.0; m as usize + 1];
        for j in 1..=m as usize {
            let jf = j as f64;
            col[j] = col[j - 1] * (u1 + jf - 1.0) * (u2 + jf - 1.0)
                / ((spec.lower[k] + jf - 1.0) * jf);
        }
        phi.push(col);
    }
    let mut acc = KahanSum::new();
    grid_sum_f64(&phi, &shared, 0, 1.0, 0, &mut acc);
    Ok(acc.value())
}

/// Exact-rational evaluation of the same sum; parameters must be
/// half-integers. This is the backend the angular moment factors use: their
/// alternating grids cancel catastrophically in f64 (percent-level error
/// already at modest degrees).
pub fn srivastava_daoust_unit_rational(spec: &SrivastavaDaoustSpec) -> Result<Rat, Error> {
    let ms = spec.bounds()?;
    let smax: usize = ms.iter().map(|&m| m as usize).sum();
    let a0 = rat_from_half(spec.a0)?;
    let b0 = rat_from_half(spec.b0)?;
    let mut shared = vec![Rat::from_integer(BigInt::from(1)); smax + 1];
    for s in 1..=smax {
        let sf = rat_int(s as i64 - 1);
        let next = &shared[s - 1] * (&a0 + &sf) / (&b0 + &sf);
        shared[s] = next;
    }
    let mut phi: Vec<Vec<Rat>> = Vec::with_capacity(ms.len());
    for (k, &m) in ms.iter().enumerate() {
        let u1 = rat_from_half(spec.upper[k].0)?;
        let u2 = rat_from_half(spec.upper[k].1)?;
        let lo = rat_from_half(spec.lower[k])?;
        let mut col = vec![Rat::from_integer(BigInt::from(1)); m as usize + 1];
        for j in 1..=m as usize {
            let jm1 = rat_int(j as i64 - 1);
            let next = &col[j - 1] * (&u1 + &jm1) * (&u2 + &jm1)
                / ((&lo + &jm1) * rat_int(j as i64));
            col[j] = next;
        }
        phi.push(col);
    }
    let mut acc = Rat::from_integer(BigInt::from(0));
    grid_sum_rat(&phi, &shared, 0, &Rat::from_integer(BigInt::from(1)), 0, &mut acc);
    Ok(acc)
}

/// One coefficient of the quadratic Laguerre logarithmic expansion:
/// with b = 2l+D-1 and m = n-l-1,
/// c_ij = (b+i)_(1+j) / Gamma(b+j) * (-m)_i (-m)_j / (i! j!).
pub fn coeff_cij(n: u32, l: u32, dim: u32, i: u32, j: u32) -> Result<f64, Error> {
    if dim < 2 || n < 1 || l > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "need dim >= 2, n >= 1, l <= n-1; got n={n} l={l} dim={dim}"
        )));
    }
    let m = n - l - 1;
    if i > m || j > m {
        return Err(Error::InvalidArgument(format!(
            "indices run over 0..=n-l-1 = {m}; got i={i} j={j}"
        )));
    }
    let b = (2 * l + dim - 1) as f64;
    let (i_f, j_f, m_f) = (i as f64, j as f64, m as f64);
    let ln = specfun::log_gamma(b + i_f + j_f + 1.0) - specfun::log_gamma(b + i_f)
        - specfun::log_gamma(b + j_f)
        + 2.0 * specfun::log_gamma(m_f + 1.0)
        - specfun::log_gamma(m_f - i_f + 1.0)
        - specfun::log_gamma(m_f - j_f + 1.0)
        - specfun::log_gamma(i_f + 1.0)
        - specfun::log_gamma(j_f + 1.0);
    let sign = if (i + j).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * ln.exp())
}

/// The three coefficient-grid sums the radial closed form consumes:
/// S_c = sum c_ij, S_cpsi = sum c_ij psi(e_ij), S_ce = sum c_ij e_ij,
/// with e_ij = 2l + D + i + j.
pub(crate) struct CijSums {
    pub s_c: f64,
    pub s_c_psi: f64,
    pub s_c_e: f64,
}

pub(crate) fn cij_sums_float(n: u32, l: u32, dim: u32) -> CijSums {
    let m = (n - l - 1) as usize;
    let b = (2 * l + dim - 1) as f64;
    // pm[i] = (-m)_i / i!, exact in f64 for the small m this path serves
    let mut pm = vec![1.0; m + 1];
    for i in 1..=m {
        pm[i] = pm[i - 1] * (i as f64 - 1.0 - m as f64) / i as f64;
    }
    let (mut sc, mut spsi, mut se) = (KahanSum::new(), KahanSum::new(), KahanSum::new());
    for i in 0..=m {
        for j in 0..=m {
            let row = specfun::log_gamma(b + (i + j) as f64 + 1.0)
                - specfun::log_gamma(b + i as f64)
                - specfun::log_gamma(b + j as f64);
            let c = pm[i] * pm[j] * row.exp();
            let e = (2 * l + dim) as f64 + (i + j) as f64;
            sc.add(c);
            spsi.add(c * specfun::digamma_half(2 * (2 * l + dim + (i + j) as u32)));
            se.add(c * e);
        }
    }
    CijSums { s_c: sc.value(), s_c_psi: spsi.value(), s_c_e: se.value() }
}

/// Exact counterpart; `s_c_h` couples each c_ij to the harmonic number
/// H_(e_ij - 1), so psi(e) = H_(e-1) - gamma splits into
/// S_cpsi = s_c_h - gamma * s_c with all cancellation done in rationals.
pub(crate) struct CijSumsExact {
    pub s_c: Rat,
    pub s_c_h: Rat,
    pub s_c_e: Rat,
    /// P = (n-l)_(2l+D-2) as an exact integer ratio
    pub p: Rat,
}

pub(crate) fn cij_sums_exact(n: u32, l: u32, dim: u32) -> CijSumsExact {
    let m = (n - l - 1) as usize;
    let b = (2 * l + dim - 1) as usize;
    let top = b + 2 * m + 1;
    let mut fact = Vec::with_capacity(top + 1);
    fact.push(BigInt::from(1));
    for k in 1..=top {
        let next = &fact[k - 1] * BigInt::from(k as u64);
        fact.push(next);
    }
    // harmonic numbers H_0..H_(e_max - 1); e_max - 1 = b + 2m
    let mut harm = Vec::with_capacity(b + 2 * m + 1);
    harm.push(Rat::from_integer(BigInt::from(0)));
    for k in 1..=(b + 2 * m) {
        let next = &harm[k - 1] + Rat::new(BigInt::from(1), BigInt::from(k as u64));
        harm.push(next);
    }
    let mut pm = vec![Rat::from_integer(BigInt::from(1)); m + 1];
    for i in 1..=m {
        let next = &pm[i - 1] * rat_int(i as i64 - 1 - m as i64) / rat_int(i as i64);
        pm[i] = next;
    }
    let zero = Rat::from_integer(BigInt::from(0));
    let (mut sc, mut sh, mut se) = (zero.clone(), zero.clone(), zero);
    for i in 0..=m {
        for j in 0..=m {
            // Gamma(b+i+j+1) / (Gamma(b+i) Gamma(b+j)) on integer arguments
            let row = Rat::new(fact[b + i + j].clone(), &fact[b + i - 1] * &fact[b + j - 1]);
            let c = &pm[i] * &pm[j] * row;
            let e = b + 1 + i + j;
            sc += &c;
            sh += &c * &harm[e - 1];
            se += &c * rat_int(e as i64);
        }
    }
    // P = (n-l)_(2l+D-2) = (n+l+D-3)! / (n-l-1)!
    let p = Rat::new(fact[(n + l + dim - 3) as usize].clone(), fact[m].clone());
    CijSumsExact { s_c: sc, s_c_h: sh, s_c_e: se, p }
}

/// One hyperspherical-harmonic moment factor of the first kind for the
/// chain link (mu_hi, mu_lo) at angular slot j (1-based), order q.
pub fn angular_factor_b(dim: u32, mu_hi: i64, mu_lo: i64, j: u32, q: f64) -> Result<f64, Error> {
    validate_factor_args(dim, mu_hi, mu_lo, j)?;
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("order q must be positive, got {q}")));
    }
    let alpha = (dim as f64 - j as f64 - 1.0) / 2.0;
    let (hi, lo) = (mu_hi as f64, mu_lo as f64);
    let nj = hi - lo;
    let lam = alpha + lo;
    let ln_b = q * (ln_poch(2.0 * lam + 1.0, 2.0 * nj)
        - ln_poch(2.0 * alpha + hi + lo, nj)
        - ln_poch(lam + 1.0, nj)
        - specfun::log_gamma(nj + 1.0))
        + ln_poch(alpha + q * lo + 1.0, q * nj);
    Ok(ln_b.exp())
}

fn ln_poch(z: f64, a: f64) -> f64 {
    specfun::log_gamma(z + a) - specfun::log_gamma(z)
}

fn validate_factor_args(dim: u32, mu_hi: i64, mu_lo: i64, j: u32) -> Result<(), Error> {
    if dim < 3 {
        return Err(Error::InvalidArgument(format!(
            "angular moment factors exist for dim >= 3, got {dim}"
        )));
    }
    if j < 1 || j > dim - 2 {
        return Err(Error::InvalidArgument(format!(
            "angular slot j runs over 1..=dim-2, got {j}"
        )));
    }
    if mu_lo < 0 || mu_hi < mu_lo {
        return Err(Error::InvalidArgument(format!(
            "need mu_hi >= mu_lo >= 0, got ({mu_hi}, {mu_lo})"
        )));
    }
    Ok(())
}

/// The companion factor of the second kind: a terminating
/// Srivastava-Daoust-type sum with 2q copies of the link's parameters,
/// evaluated exactly and rounded once at the end.
pub fn angular_factor_g(dim: u32, mu_hi: i64, mu_lo: i64, j: u32, q: u32) -> Result<f64, Error> {
    validate_factor_args(dim, mu_hi, mu_lo, j)?;
    if q < 1 {
        return Err(Error::InvalidArgument("order q must be at least 1".into()));
    }
    let nj = mu_hi - mu_lo;
    if nj == 0 {
        return Ok(1.0);
    }
    let alpha = (dim as f64 - j as f64 - 1.0) / 2.0;
    let (hi, lo) = (mu_hi as f64, mu_lo as f64);
    let qf = q as f64;
    let spec = SrivastavaDaoustSpec {
        a0: alpha + qf * lo + 0.5,
        b0: 2.0 * qf * lo + 2.0 * alpha + 1.0,
        upper: vec![(-(nj as f64), 2.0 * alpha + lo + hi); 2 * q as usize],
        lower: vec![alpha + lo + 0.5; 2 * q as usize],
    };
    Ok(rat_to_f64(&srivastava_daoust_unit_rational(&spec)?))
}

/// Entropic moment of the angular density: the integral of |Y|^(2q) over the
/// unit hypersphere, in closed form. Independent of n and Z.
pub fn entropic_moment(state: &QuantumState, q: u32) -> Result<f64, Error> {
    hydrogenic::validate_and_derive(state)?;
    if q < 1 {
        return Err(Error::InvalidArgument("order q must be at least 1".into()));
    }
    entropic_moment_chain(state.dim, &state.canonical_chain(), q)
}

/// Same, on a bare canonical chain (already validated, last entry >= 0).
pub(crate) fn entropic_moment_chain(dim: u32, chain: &[i64], q: u32) -> Result<f64, Error> {
    let d = dim as f64;
    let qf = q as f64;
    let l = chain.first().copied().unwrap_or(0) as u32;
    let m_abs = chain.last().copied().unwrap_or(0) as u32;
    // prefactor (2 pi^(D/2))^(1-q) * Gamma(l + D/2)^q / Gamma(q l + D/2)
    //           * Gamma(q |m| + 1) / Gamma(|m| + 1)^q
    let ln_pre = (1.0 - qf) * (std::f64::consts::LN_2 + (d / 2.0) * std::f64::consts::PI.ln())
        + qf * specfun::log_gamma_half(2 * l + dim)
        - specfun::log_gamma_half(2 * (q * l) + dim)
        + specfun::log_gamma_half(2 * (q * m_abs + 1))
        - qf * specfun::log_gamma_half(2 * (m_abs + 1));
    let mut val = ln_pre.exp();
    for idx in 0..dim.saturating_sub(2) as usize {
        let hi = chain[idx];
        let lo = chain[idx + 1];
        let j = idx as u32 + 1;
        val *= angular_factor_b(dim, hi, lo, j, qf)?;
        val *= angular_factor_g(dim, hi, lo, j, q)?;
    }
    Ok(val)
}
