//! Scalar special functions and classical orthogonal polynomials.
//!
//! Everything here is pure and allocation-free except root finding. Polynomials
//! are always evaluated by their three-term recurrences, never from monomial
//! coefficients, and roots come from the Jacobi-matrix eigenvalue problem
//! (Golub-Welsch) with a short Newton polish.

use crate::error::Error;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

// Bernoulli-number coefficients B_{2j}/(2j(2j-1)) of the Stirling series.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

// B_{2j}/(2j) for the digamma asymptotic series.
const DIGAMMA_ASY: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Natural log of the gamma function for x > 0.
///
/// Recurrence shift into x >= 10 followed by the Stirling series; relative
/// error stays below 1e-14 through x = 1e6. Returns NaN outside the domain.
pub fn log_gamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut corr = STIRLING[6];
    for j in (0..6).rev() {
        corr = STIRLING[j] + corr * inv2;
    }
    (y - 0.5) * y.ln() - y + LN_SQRT_2PI + corr * inv - shift
}

/// Digamma function psi(x) = Gamma'(x)/Gamma(x) for x > 0.
///
/// Absolute error below 1e-13. Returns NaN outside the domain.
pub fn digamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return f64::NAN;
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut tail = DIGAMMA_ASY[6];
    for j in (0..6).rev() {
        tail = DIGAMMA_ASY[j] + tail * inv2;
    }
    y.ln() - 0.5 * inv - tail * inv2 - shift
}

/// ln Gamma(two_x / 2) built by exact recurrence from Gamma(1/2) = sqrt(pi)
/// or Gamma(1) = 1, so half-integer arguments carry no series error.
///
/// Falls back to the asymptotic route once the recurrence would walk more
/// than ~500 steps (where both agree to full precision anyway).
pub fn log_gamma_half(two_x: u32) -> f64 {
    if two_x == 0 {
        return f64::NAN;
    }
    if two_x > 1024 {
        return log_gamma(two_x as f64 / 2.0);
    }
    let mut sum = KahanSum::new();
    if two_x.is_multiple_of(2) {
        let k = two_x / 2;
        for i in 2..k {
            sum.add((i as f64).ln());
        }
        sum.value()
    } else {
        let k = (two_x - 1) / 2;
        sum.add(0.5 * std::f64::consts::PI.ln());
        for i in 0..k {
            sum.add((i as f64 + 0.5).ln());
        }
        sum.value()
    }
}

/// psi(two_x / 2) by exact recurrence from psi(1) = -gamma and
/// psi(1/2) = -gamma - 2 ln 2.
pub fn digamma_half(two_x: u32) -> f64 {
    if two_x == 0 {
        return f64::NAN;
    }
    if two_x > 8192 {
        return digamma(two_x as f64 / 2.0);
    }
    let mut sum = KahanSum::new();
    if two_x.is_multiple_of(2) {
        let k = two_x / 2;
        sum.add(-EULER_GAMMA);
        for i in 1..k {
            sum.add(1.0 / i as f64);
        }
    } else {
        let k = (two_x - 1) / 2;
        sum.add(-EULER_GAMMA - 2.0 * std::f64::consts::LN_2);
        for i in 0..k {
            sum.add(2.0 / (2.0 * i as f64 + 1.0));
        }
    }
    sum.value()
}

/// Pochhammer symbol (z)_k as a direct product, so terminating zeros at
/// nonpositive integer z are exact rather than 0/0 gamma ratios.
pub fn pochhammer(z: f64, k: u32) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r *= z + i as f64;
    }
    r
}

/// Compensated (Kahan) accumulator for the alternating sums in this crate.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, term: f64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// The three polynomial families the densities and entropies are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFamily {
    /// Generalized Laguerre L_n^(alpha).
    LaguerreL,
    /// Gegenbauer (ultraspherical) C_n^(lambda).
    GegenbauerC,
    /// The Kummer polynomial 1F1(-n; b; x), degree exactly n.
    KummerPoly,
}

/// A polynomial picked out of one of the three families.
///
/// `param1` is alpha for Laguerre, lambda for Gegenbauer, and the lower
/// parameter b for Kummer. `param2` is reserved and must stay `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSpec {
    pub family: PolyFamily,
    pub degree: u32,
    pub param1: f64,
    pub param2: Option<f64>,
}

impl PolynomialSpec {
    pub fn laguerre(degree: u32, alpha: f64) -> Result<Self, Error> {
        let s = Self { family: PolyFamily::LaguerreL, degree, param1: alpha, param2: None };
        s.validate()?;
        Ok(s)
    }

    pub fn gegenbauer(degree: u32, lambda: f64) -> Result<Self, Error> {
        let s = Self { family: PolyFamily::GegenbauerC, degree, param1: lambda, param2: None };
        s.validate()?;
        Ok(s)
    }

    pub fn kummer(degree: u32, b: f64) -> Result<Self, Error> {
        let s = Self { family: PolyFamily::KummerPoly, degree, param1: b, param2: None };
        s.validate()?;
        Ok(s)
    }

    /// Checks the parameter domain of the family.
    pub fn validate(&self) -> Result<(), Error> {
        if self.param2.is_some() {
            return Err(Error::InvalidPolynomial("param2 is reserved and must be None".into()));
        }
        let p = self.param1;
        if !p.is_finite() {
            return Err(Error::InvalidPolynomial(format!("non-finite parameter {p}")));
        }
        match self.family {
            PolyFamily::LaguerreL => {
                if p <= -1.0 {
                    return Err(Error::InvalidPolynomial(format!("Laguerre alpha must be > -1, got {p}")));
                }
            }
            PolyFamily::GegenbauerC => {
                if p <= -0.5 {
                    return Err(Error::InvalidPolynomial(format!("Gegenbauer lambda must be > -1/2, got {p}")));
                }
                if p == 0.0 {
                    return Err(Error::InvalidPolynomial("Gegenbauer lambda = 0 is degenerate".into()));
                }
            }
            PolyFamily::KummerPoly => {
                if p <= 0.0 && p == p.round() {
                    return Err(Error::InvalidPolynomial(format!(
                        "Kummer lower parameter must not be a nonpositive integer, got {p}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Evaluates the polynomial by its three-term recurrence.
pub fn poly_eval(spec: &PolynomialSpec, x: f64) -> Result<f64, Error> {
    spec.validate()?;
    Ok(eval_raw(spec.family, spec.degree, spec.param1, x))
}

/// Recurrence evaluation without the per-call validation, for inner loops on
/// specs that were validated at construction.
pub(crate) fn eval_raw(family: PolyFamily, degree: u32, p1: f64, x: f64) -> f64 {
    match family {
        PolyFamily::LaguerreL => {
            let alpha = p1;
            if degree == 0 {
                return 1.0;
            }
            let mut p_prev = 1.0;
            let mut p = 1.0 + alpha - x;
            for k in 1..degree {
                let kf = k as f64;
                let next = ((2.0 * kf + 1.0 + alpha - x) * p - (kf + alpha) * p_prev) / (kf + 1.0);
                p_prev = p;
                p = next;
            }
            p
        }
        PolyFamily::GegenbauerC => {
            let lam = p1;
            if degree == 0 {
                return 1.0;
            }
            let mut p_prev = 1.0;
            let mut p = 2.0 * lam * x;
            for k in 1..degree {
                let kf = k as f64;
                let next = (2.0 * (kf + lam) * x * p - (kf + 2.0 * lam - 1.0) * p_prev) / (kf + 1.0);
                p_prev = p;
                p = next;
            }
            p
        }
        PolyFamily::KummerPoly => {
            let b = p1;
            if degree == 0 {
                return 1.0;
            }
            let mut p_prev = 1.0;
            let mut p = 1.0 - x / b;
            for k in 1..degree {
                let kf = k as f64;
                let next = ((2.0 * kf + b - x) * p - kf * p_prev) / (b + kf);
                p_prev = p;
                p = next;
            }
            p
        }
    }
}

// First derivative via the shifted-family identities; used only to polish roots.
fn eval_deriv(family: PolyFamily, degree: u32, p1: f64, x: f64) -> f64 {
    if degree == 0 {
        return 0.0;
    }
    match family {
        PolyFamily::LaguerreL => -eval_raw(PolyFamily::LaguerreL, degree - 1, p1 + 1.0, x),
        PolyFamily::GegenbauerC => 2.0 * p1 * eval_raw(PolyFamily::GegenbauerC, degree - 1, p1 + 1.0, x),
        PolyFamily::KummerPoly => {
            -(degree as f64 / p1) * eval_raw(PolyFamily::KummerPoly, degree - 1, p1 + 1.0, x)
        }
    }
}

/// All real simple roots of the polynomial, ascending.
///
/// Laguerre and Gegenbauer roots are the eigenvalues of the family's Jacobi
/// matrix; Kummer reduces to Laguerre through 1F1(-m; b; x) ~ L_m^(b-1)(x).
pub fn poly_roots(spec: &PolynomialSpec) -> Result<Vec<f64>, Error> {
    spec.validate()?;
    if spec.degree == 0 {
        return Err(Error::InvalidPolynomial("root finding needs degree >= 1".into()));
    }
    let (family, p1) = match spec.family {
        PolyFamily::KummerPoly => {
            if spec.param1 <= 0.0 {
                return Err(Error::InvalidPolynomial(
                    "Kummer root finding needs a positive lower parameter".into(),
                ));
            }
            (PolyFamily::LaguerreL, spec.param1 - 1.0)
        }
        f => (f, spec.param1),
    };
    let n = spec.degree as usize;
    let (diag, off) = jacobi_coeffs(family, n, p1);
    let mut roots = symtridiag_eigenvalues(diag, off);
    // two guarded Newton steps against the original polynomial
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let pv = eval_raw(spec.family, spec.degree, spec.param1, *r);
            let dv = eval_deriv(spec.family, spec.degree, spec.param1, *r);
            if dv == 0.0 {
                break;
            }
            let step = pv / dv;
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + r.abs()) {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

// Jacobi-matrix recurrence coefficients (diag a_k, offdiag b_k with b_k
// coupling rows k-1 and k) for the orthonormal family.
fn jacobi_coeffs(family: PolyFamily, n: usize, p1: f64) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    match family {
        PolyFamily::LaguerreL => {
            let alpha = p1;
            for (k, d) in diag.iter_mut().enumerate() {
                *d = 2.0 * k as f64 + alpha + 1.0;
            }
            for k in 1..n {
                let kf = k as f64;
                off[k - 1] = (kf * (kf + alpha)).sqrt();
            }
        }
        PolyFamily::GegenbauerC => {
            let lam = p1;
            for k in 1..n {
                let kf = k as f64;
                let b2 = kf * (kf + 2.0 * lam - 1.0) / (4.0 * (kf + lam) * (kf + lam - 1.0));
                debug_assert!(b2 > 0.0);
                off[k - 1] = b2.sqrt();
            }
        }
        PolyFamily::KummerPoly => unreachable!("mapped to Laguerre above"),
    }
    (diag, off)
}

// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// sweep (EISPACK tql1 lineage). off[k] couples diag[k] and diag[k+1];
// off[n-1] is scratch.
fn symtridiag_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Vec<f64> {
    let n = d.len();
    if n <= 1 {
        return d;
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break; // Newton polish in the caller mops up the residue
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut aborted = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    aborted = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if aborted {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

/// Gauss quadrature nodes and weights for the spec's weight function.
///
/// The node count is the spec's degree; weights come from the Christoffel
/// numbers 1/sum_k p_k(x_i)^2 over the orthonormal family. KummerPoly uses
/// the weight of its equivalent Laguerre family.
pub fn gauss_rule(spec: &PolynomialSpec) -> Result<(Vec<f64>, Vec<f64>), Error> {
    spec.validate()?;
    if spec.degree == 0 {
        return Err(Error::InvalidPolynomial("a Gauss rule needs degree >= 1".into()));
    }
    let (family, p1) = match spec.family {
        PolyFamily::KummerPoly => (PolyFamily::LaguerreL, spec.param1 - 1.0),
        f => (f, spec.param1),
    };
    if family == PolyFamily::LaguerreL && p1 <= -1.0 {
        return Err(Error::InvalidPolynomial("weight needs alpha > -1".into()));
    }
    let n = spec.degree as usize;
    let nodes = poly_roots(&PolynomialSpec { family, degree: spec.degree, param1: p1, param2: None })?;
    let mu0 = match family {
        PolyFamily::LaguerreL => (log_gamma(p1 + 1.0)).exp(),
        PolyFamily::GegenbauerC => {
            (0.5 * std::f64::consts::PI.ln() + log_gamma(p1 + 0.5) - log_gamma(p1 + 1.0)).exp()
        }
        PolyFamily::KummerPoly => unreachable!(),
    };
    let (diag, mut off) = jacobi_coeffs(family, n + 1, p1);
    off.rotate_right(1); // off[k] now couples k-1 and k, i.e. b_k of the recurrence
    let mut weights = Vec::with_capacity(n);
    for &x in &nodes {
        let mut p_prev = 0.0;
        let mut p = 1.0 / mu0.sqrt();
        let mut sum = p * p;
        for k in 0..n - 1 {
            let next = ((x - diag[k]) * p - off[k] * p_prev) / off[k + 1];
            p_prev = p;
            p = next;
            sum += p * p;
        }
        weights.push(1.0 / sum);
    }
    Ok((nodes, weights))
}
