//! Adaptive quadrature on finite and semi-infinite intervals, built on an
//! embedded 15/31-point Gauss pair, plus the two logarithmic integrals the
//! entropy formulas need.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::Error;
use crate::specfun::{self, KahanSum, PolyFamily, PolynomialSpec};

/// Tolerances and effort cap for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_subdivisions: 2000 }
    }
}

impl QuadratureConfig {
    /// Near-roundoff tolerances for places where the result feeds a
    /// numerical derivative.
    pub fn tight() -> Self {
        Self { rel_tol: 1e-13, abs_tol: 1e-14, max_subdivisions: 4000 }
    }

    fn validate(&self) -> Result<(), Error> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::InvalidArgument(
                "tolerances must be positive and max_subdivisions nonzero".into(),
            ));
        }
        Ok(())
    }
}

/// Integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Finite { a: f64, b: f64 },
    /// [start, infinity) for integrands decaying like exp(-x/decay_scale).
    SemiInfinite { start: f64, decay_scale: f64 },
}

/// Outcome of an adaptive integration. `converged` is false when the
/// subdivision budget ran out before the error estimate met tolerance;
/// the value and estimate are still the best available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: u32,
    pub converged: bool,
}

// Nodes and weights of the embedded pair on [-1, 1], derived from the
// Jacobi matrix of the weight-1 (lambda = 1/2 Gegenbauer) family.
type NodeWeights = Vec<(f64, f64)>;

fn pair_rules() -> &'static (NodeWeights, NodeWeights) {
    static RULES: OnceLock<(NodeWeights, NodeWeights)> = OnceLock::new();
    RULES.get_or_init(|| {
        let mk = |n: u32| {
            let spec = PolynomialSpec::gegenbauer(n, 0.5).expect("static rule spec");
            let (x, w) = gauss_rule_checked(&spec);
            x.into_iter().zip(w).collect::<Vec<_>>()
        };
        (mk(15), mk(31))
    })
}

fn gauss_rule_checked(spec: &PolynomialSpec) -> (Vec<f64>, Vec<f64>) {
    specfun::gauss_rule(spec).expect("Gauss rule for a validated spec")
}

// How a panel's coordinate maps into integrand arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Map {
    Direct,
    // x = r - s ln u turns the tail [r, inf) into u in (0, 1];
    // dx = -s/u du, so g(u) = f(r - s ln u) * s / u.
    Tail { r: f64, s: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    err: f64,
    val: f64,
    a: f64,
    b: f64,
    map: Map,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // max-heap by error, with full tie-breaking so the refinement order
    // (and therefore the result bit pattern) is deterministic
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| self.a.total_cmp(&other.a))
            .then_with(|| self.b.total_cmp(&other.b))
    }
}

fn eval_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64, map: Map) -> Result<(f64, f64), Error> {
    let (g15, g31) = pair_rules();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let apply = |x: f64| -> f64 {
        match map {
            Map::Direct => f(x),
            Map::Tail { r, s } => f(r - s * x.ln()) * s / x,
        }
    };
    let mut coarse = KahanSum::new();
    for &(x, w) in g15 {
        coarse.add(w * apply(mid + half * x));
    }
    let mut fine = KahanSum::new();
    for &(x, w) in g31 {
        fine.add(w * apply(mid + half * x));
    }
    let v31 = half * fine.value();
    let v15 = half * coarse.value();
    if !v31.is_finite() || !v15.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "integrand produced a non-finite value on [{a}, {b}]"
        )));
    }
    Ok((v31, (v31 - v15).abs()))
}

/// Integrates `f` adaptively. Breakpoints (integrand kinks, polynomial
/// roots, density peaks) become initial panel boundaries so refinement
/// starts aligned with the structure. Non-convergence within the
/// subdivision budget is reported through the flag, not an error.
pub fn integrate_adaptive(
    f: &dyn Fn(f64) -> f64,
    interval: Interval,
    breakpoints: &[f64],
    config: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    config.validate()?;

    // resolve the domain into seed panels
    let mut seeds: Vec<(f64, f64, Map)> = Vec::new();
    match interval {
        Interval::Finite { a, b } => {
            if !a.is_finite() || !b.is_finite() || b <= a {
                return Err(Error::InvalidArgument(format!("bad finite interval [{a}, {b}]")));
            }
            push_cut_panels(&mut seeds, a, b, breakpoints, Map::Direct);
        }
        Interval::SemiInfinite { start, decay_scale } => {
            if !start.is_finite() || !(decay_scale > 0.0) || !decay_scale.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "bad semi-infinite interval (start {start}, decay scale {decay_scale})"
                )));
            }
            let bp_max = breakpoints.iter().copied().fold(start, f64::max);
            // cut far enough out that the remaining tail is below tolerance
            // even after polynomial factors widen the decay
            let r = bp_max + 2.0 * decay_scale * (10.0 / config.abs_tol).ln();
            push_cut_panels(&mut seeds, start, r, breakpoints, Map::Direct);
            // the literal substitution u = exp(-x) underflows to a point
            // once r is a few hundred; anchoring at r keeps u in (0, 1]
            seeds.push((0.0, 1.0, Map::Tail { r, s: decay_scale }));
        }
    }

    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    for (a, b, map) in seeds {
        let (val, err) = eval_panel(f, a, b, map)?;
        heap.push(Panel { err, val, a, b, map });
    }

    let mut subdivisions = 0u32;
    let mut converged = true;
    loop {
        let total: f64 = heap.iter().map(|p| p.val).sum();
        let err: f64 = heap.iter().map(|p| p.err).sum();
        if err <= config.abs_tol.max(config.rel_tol * total.abs()) {
            break;
        }
        if subdivisions >= config.max_subdivisions {
            converged = false;
            break;
        }
        let worst = heap.pop().expect("heap seeded nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at f64 resolution; cannot split further
            converged = false;
            heap.push(worst);
            break;
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (val, err) = eval_panel(f, a, b, worst.map)?;
            heap.push(Panel { err, val, a, b, map: worst.map });
        }
        subdivisions += 1;
    }

    // deterministic final accumulation, ordered by position
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| {
        let key = |m: Map| matches!(m, Map::Tail { .. }) as u8;
        key(p.map).cmp(&key(q.map)).then(p.a.total_cmp(&q.a))
    });
    let mut value = KahanSum::new();
    let mut error = KahanSum::new();
    for p in &panels {
        value.add(p.val);
        error.add(p.err);
    }
    Ok(IntegralResult {
        value: value.value(),
        error_estimate: error.value(),
        subdivisions,
        converged,
    })
}

fn push_cut_panels(seeds: &mut Vec<(f64, f64, Map)>, a: f64, b: f64, cuts: &[f64], map: Map) {
    let mut pts: Vec<f64> = cuts.iter().copied().filter(|&c| c > a && c < b).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut lo = a;
    for c in pts {
        if c > lo {
            seeds.push((lo, c, map));
            lo = c;
        }
    }
    if b > lo {
        seeds.push((lo, b, map));
    }
}

/// The logarithmic functional -integral of w(x) p'(x)^2 ln p'(x)^2 over
/// [-1, 1], where p' is the orthonormalized Gegenbauer polynomial of the
/// spec and w its weight (1-x^2)^(lambda-1/2). This is the per-factor
/// angular entropy contribution.
pub fn poly_entropy_e(spec: &PolynomialSpec, config: &QuadratureConfig) -> Result<IntegralResult, Error> {
    spec.validate()?;
    if spec.family != PolyFamily::GegenbauerC {
        return Err(Error::InvalidPolynomial(
            "the logarithmic weight functional is defined on the Gegenbauer family".into(),
        ));
    }
    let lam = spec.param1;
    let deg = spec.degree;
    // squared norm of the plain polynomial under the weight:
    // h^2 = 2^(1-2 lam) pi Gamma(deg + 2 lam) / (Gamma(lam)^2 (deg + lam) deg!)
    let ln_hsq = (1.0 - 2.0 * lam) * std::f64::consts::LN_2 + std::f64::consts::PI.ln()
        + specfun::log_gamma(deg as f64 + 2.0 * lam)
        - 2.0 * specfun::log_gamma(lam)
        - (deg as f64 + lam).ln()
        - specfun::log_gamma(deg as f64 + 1.0);
    let f = move |x: f64| -> f64 {
        let om = 1.0 - x * x;
        if om <= 0.0 {
            return 0.0;
        }
        let c = specfun::eval_raw(PolyFamily::GegenbauerC, deg, lam, x);
        if c == 0.0 || !c.is_finite() {
            return 0.0;
        }
        let v = 2.0 * c.abs().ln() - ln_hsq;
        -((lam - 0.5) * om.ln() + v).exp() * v
    };
    let roots = if deg == 0 { Vec::new() } else { specfun::poly_roots(spec)? };
    integrate_adaptive(&f, Interval::Finite { a: -1.0, b: 1.0 }, &roots, config)
}

/// The logarithmic Kummer integral of the radial closed form:
/// integral over t in [0, inf) of e^(-t) t^b K(t)^2 ln K(t)^2,
/// with K = 1F1(-(n-l-1); b; t) and b = 2l + D - 1.
pub fn kummer_log_integral(
    n: u32,
    l: u32,
    dim: u32,
    config: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    if dim < 2 || n < 1 || l > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "need dim >= 2, n >= 1, l <= n-1; got n={n} l={l} dim={dim}"
        )));
    }
    let m = n - l - 1;
    let b = (2 * l + dim - 1) as f64;
    if m == 0 {
        // K = 1 identically, so the log factor vanishes
        return Ok(IntegralResult { value: 0.0, error_estimate: 0.0, subdivisions: 0, converged: true });
    }
    let f = move |t: f64| -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let k = specfun::eval_raw(PolyFamily::KummerPoly, m, b, t);
        if !k.is_finite() {
            // only reachable so deep in the tail that e^(-t) has won long ago
            return 0.0;
        }
        let v = k * k;
        if v == 0.0 {
            return 0.0;
        }
        let lv = v.ln();
        (-t + b * t.ln() + lv).exp() * lv
    };
    let spec = PolynomialSpec::kummer(m, b)?;
    let mut bps = specfun::poly_roots(&spec)?;
    // the weight t^b e^(-t) peaks near t = b; keep it inside the cut region
    bps.push(b.max(1.0));
    integrate_adaptive(&f, Interval::SemiInfinite { start: 0.0, decay_scale: 1.0 }, &bps, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (diff {:.3e})", (a - b).abs());
    }

    fn run(f: &dyn Fn(f64) -> f64, iv: Interval, bp: &[f64]) -> IntegralResult {
        integrate_adaptive(f, iv, bp, &QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn polynomial_is_exact() {
        let r = run(&|x| x * x * x - 2.0 * x + 1.0, Interval::Finite { a: -1.0, b: 3.0 }, &[]);
        assert!(r.converged);
        // antiderivative x^4/4 - x^2 + x: F(3)-F(-1) = (81/4-9+3) - (1/4-1-1) = 16
        close(r.value, 16.0, 1e-12);
    }

    #[test]
    fn smooth_transcendental() {
        let r = run(&|x: f64| x.sin(), Interval::Finite { a: 0.0, b: PI }, &[]);
        close(r.value, 2.0, 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn kinked_integrand_needs_breakpoint() {
        let f = |x: f64| (x - 0.375).abs();
        let with = run(&f, Interval::Finite { a: 0.0, b: 1.0 }, &[0.375]);
        close(with.value, 0.375f64.powi(2) / 2.0 + 0.625f64.powi(2) / 2.0, 1e-13);
        // without the breakpoint it still converges, just works harder
        let without = run(&f, Interval::Finite { a: 0.0, b: 1.0 }, &[]);
        close(without.value, with.value, 1e-10);
        assert!(without.subdivisions >= with.subdivisions);
    }

    #[test]
    fn semi_infinite_gamma_integral() {
        // integral of t^4 e^(-t) = 24
        let r = run(
            &|t: f64| if t <= 0.0 { 0.0 } else { (4.0 * t.ln() - t).exp() },
            Interval::SemiInfinite { start: 0.0, decay_scale: 1.0 },
            &[4.0],
        );
        close(r.value, 24.0, 1e-10);
        assert!(r.converged);
    }

    #[test]
    fn semi_infinite_slow_decay_scale() {
        // integral from 1 of e^(-x/10) = 10 e^(-1/10)
        let r = run(
            &|x: f64| (-x / 10.0).exp(),
            Interval::SemiInfinite { start: 1.0, decay_scale: 10.0 },
            &[],
        );
        close(r.value, 10.0 * (-0.1f64).exp(), 1e-9);
    }

    #[test]
    fn exhausted_budget_is_flagged_not_an_error() {
        let cfg = QuadratureConfig { rel_tol: 1e-15, abs_tol: 1e-300, max_subdivisions: 3 };
        let r = integrate_adaptive(
            &|x: f64| (x - 0.3137).abs().sqrt(),
            Interval::Finite { a: 0.0, b: 1.0 },
            &[],
            &cfg,
        )
        .unwrap();
        assert!(!r.converged);
        assert_eq!(r.subdivisions, 3);
    }

    #[test]
    fn invalid_domains_error() {
        assert!(integrate_adaptive(
            &|_| 1.0,
            Interval::Finite { a: 1.0, b: 1.0 },
            &[],
            &QuadratureConfig::default()
        )
        .is_err());
        assert!(integrate_adaptive(
            &|_| 1.0,
            Interval::SemiInfinite { start: 0.0, decay_scale: 0.0 },
            &[],
            &QuadratureConfig::default()
        )
        .is_err());
    }

    #[test]
    fn breakpoints_outside_domain_are_ignored() {
        let f = |x: f64| x.exp();
        let plain = run(&f, Interval::Finite { a: 0.0, b: 1.0 }, &[]);
        let noisy = run(&f, Interval::Finite { a: 0.0, b: 1.0 }, &[-5.0, 0.5, 7.0, 0.5]);
        close(plain.value, noisy.value, 1e-12);
        close(plain.value, 1f64.exp() - 1.0, 1e-12);
    }

    #[test]
    fn entropy_functional_constant_poly() {
        // degree 0: E = ln h_0^2 since the orthonormal square integrates to 1;
        // h_0^2 is the plain weight mass, done by hand per lambda
        for (lam, hsq) in [(0.5f64, 2.0f64), (1.0, PI / 2.0), (2.5, 16.0 / 15.0)] {
            let spec = PolynomialSpec::gegenbauer(0, lam).unwrap();
            let r = poly_entropy_e(&spec, &QuadratureConfig::default()).unwrap();
            close(r.value, hsq.ln(), 1e-10);
        }
    }

    #[test]
    fn entropy_functional_chebyshev_like() {
        // lambda = 1, degree 1: C_1 = 2x, h^2 = pi/2, weight sqrt(1-x^2);
        // beta-function differentiation collapses E to ln(pi/2) - 1/2
        let spec = PolynomialSpec::gegenbauer(1, 1.0).unwrap();
        let r = poly_entropy_e(&spec, &QuadratureConfig::default()).unwrap();
        close(r.value, (PI / 2.0).ln() - 0.5, 1e-10);
    }

    #[test]
    fn kummer_integral_degenerate_and_first() {
        let r = kummer_log_integral(1, 0, 3, &QuadratureConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
        // n=2, l=0, D=3: b=2, K = 1 - t/2; reference value from 30-digit
        // independent quadrature of e^-t t^2 (1-t/2)^2 ln (1-t/2)^2
        let r = kummer_log_integral(2, 0, 3, &QuadratureConfig::default()).unwrap();
        close(r.value, 2.226_484_125_861_74, 1e-9);
        assert!(r.converged);
    }
}
