//! Randomized structural invariants: identities that must hold for every
//! valid state, plus rejection behavior for every malformed one.

use proptest::prelude::*;

use hydroshannon::entropy::{angular_entropy_gegenbauer, radial_entropy_closed};
use hydroshannon::error::{Error, StateError};
use hydroshannon::hydrogenic::QuantumState;
use hydroshannon::hypersum::entropic_moment;
use hydroshannon::oracle::radial_entropy_oracle;
use hydroshannon::quad::{integrate_adaptive, Interval, QuadratureConfig};
use hydroshannon::specfun::{log_gamma, pochhammer, poly_eval, poly_roots, PolynomialSpec};

const PI: f64 = std::f64::consts::PI;

// valid state: dim 2..=6, n 1..=5, non-increasing chain, optional sign on the
// last entry, moderate charge
fn state_strategy() -> impl Strategy<Value = QuantumState> {
    (2u32..=6, 1u32..=5)
        .prop_flat_map(|(dim, n)| {
            (
                Just(dim),
                Just(n),
                proptest::collection::vec(0..n as i64, (dim - 1) as usize),
                any::<bool>(),
                0.3f64..6.0,
            )
        })
        .prop_map(|(dim, n, mut mu, negate, charge)| {
            mu.sort_unstable_by(|a, b| b.cmp(a));
            if negate {
                let last = mu.last_mut().unwrap();
                *last = -*last;
            }
            QuantumState::new(dim, charge, n, mu).expect("constructed chain is valid")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // (z)_{a+b} = (z)_a (z+a)_b
    #[test]
    fn pochhammer_splits(z in -5.0f64..5.0, a in 0u32..8, b in 0u32..8) {
        let whole = pochhammer(z, a + b);
        let split = pochhammer(z, a) * pochhammer(z + a as f64, b);
        let scale = 1.0 + whole.abs().max(split.abs());
        prop_assert!((whole - split).abs() <= 1e-10 * scale);
    }

    // roots come back strictly increasing, inside the natural domain, and the
    // polynomial changes sign across each of them
    #[test]
    fn roots_sorted_and_separating(kind in 0u32..3, degree in 1u32..10, p in 0.1f64..3.0) {
        let spec = match kind {
            0 => PolynomialSpec::laguerre(degree, p - 0.05),
            1 => PolynomialSpec::gegenbauer(degree, p),
            _ => PolynomialSpec::kummer(degree, p + 0.5),
        }.unwrap();
        let roots = poly_roots(&spec).unwrap();
        prop_assert_eq!(roots.len(), degree as usize);
        for w in roots.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        let (lo, hi) = match kind {
            1 => (-1.0, 1.0),
            _ => (0.0, f64::INFINITY),
        };
        for &r in &roots {
            prop_assert!(r > lo && r < hi);
        }
        // sample strictly between consecutive roots (and just outside the
        // extremes); simple roots force alternating signs
        let mut samples = Vec::with_capacity(roots.len() + 1);
        let first_gap = if lo.is_finite() { (lo + roots[0]) / 2.0 } else { roots[0] - 1.0 };
        samples.push(first_gap);
        for w in roots.windows(2) {
            samples.push((w[0] + w[1]) / 2.0);
        }
        let last = *roots.last().unwrap();
        samples.push(if hi.is_finite() { (last + hi) / 2.0 } else { last + 1.0 });
        let signs: Vec<f64> = samples
            .iter()
            .map(|&x| poly_eval(&spec, x).unwrap().signum())
            .collect();
        for w in signs.windows(2) {
            prop_assert!(w[0] * w[1] < 0.0, "no sign change between adjacent roots");
        }
    }

    // redundant interior breakpoints must not move a converged integral
    #[test]
    fn quadrature_breakpoint_invariance(cuts in proptest::collection::vec(0.01f64..0.99, 0..6)) {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| (x * PI).sin().powi(2) * (-x).exp();
        let plain = integrate_adaptive(&f, Interval::Finite { a: 0.0, b: 1.0 }, &[], &cfg).unwrap();
        let cut = integrate_adaptive(&f, Interval::Finite { a: 0.0, b: 1.0 }, &cuts, &cfg).unwrap();
        prop_assert!(plain.converged && cut.converged);
        prop_assert!((plain.value - cut.value).abs() <= 1e-10 * (1.0 + plain.value.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Cauchy-Schwarz on the angular density: Lambda_2^2 <= Lambda_1 Lambda_3
    #[test]
    fn moments_log_convex(state in state_strategy()) {
        let l1 = entropic_moment(&state, 1).unwrap();
        let l2 = entropic_moment(&state, 2).unwrap();
        let l3 = entropic_moment(&state, 3).unwrap();
        prop_assert!((l1 - 1.0).abs() <= 1e-12);
        prop_assert!(l2 * l2 <= l1 * l3 * (1.0 + 1e-9));
    }

    // uniform angular density: the Renyi entropy ln(Lambda_q)/(1-q) is the
    // same for every q and equals the log hypersphere surface
    #[test]
    fn s_state_renyi_flat(dim in 2u32..=9, n in 1u32..=4, charge in 0.3f64..6.0) {
        let state = QuantumState::s_state(dim, charge, n).unwrap();
        let d = dim as f64;
        let ln_surface = std::f64::consts::LN_2 + 0.5 * d * PI.ln() - log_gamma(0.5 * d);
        let r2 = entropic_moment(&state, 2).unwrap().ln() / (1.0 - 2.0);
        let r3 = entropic_moment(&state, 3).unwrap().ln() / (1.0 - 3.0);
        prop_assert!((r2 - ln_surface).abs() <= 1e-10);
        prop_assert!((r3 - ln_surface).abs() <= 1e-10);
    }

    // charge only shifts the radial part, by exactly -D ln Z
    #[test]
    fn charge_scaling_shift(state in state_strategy()) {
        let unit = QuantumState::new(state.dim, 1.0, state.n, state.mu.clone()).unwrap();
        let shift = radial_entropy_closed(&state).unwrap() - radial_entropy_closed(&unit).unwrap();
        let want = -(state.dim as f64) * state.charge.ln();
        prop_assert!((shift - want).abs() <= 1e-11);
        let a = angular_entropy_gegenbauer(&state).unwrap();
        let b = angular_entropy_gegenbauer(&unit).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    // entropies depend on the magnetic index only through its magnitude
    #[test]
    fn magnetic_sign_irrelevant(state in state_strategy()) {
        let mut mu = state.mu.clone();
        let last = mu.last_mut().unwrap();
        *last = -*last;
        let mirror = QuantumState::new(state.dim, state.charge, state.n, mu).unwrap();
        let r = radial_entropy_closed(&state).unwrap();
        let rm = radial_entropy_closed(&mirror).unwrap();
        prop_assert_eq!(r.to_bits(), rm.to_bits());
        let a = angular_entropy_gegenbauer(&state).unwrap();
        let am = angular_entropy_gegenbauer(&mirror).unwrap();
        prop_assert_eq!(a.to_bits(), am.to_bits());
        let l2 = entropic_moment(&state, 2).unwrap();
        let l2m = entropic_moment(&mirror, 2).unwrap();
        prop_assert_eq!(l2.to_bits(), l2m.to_bits());
    }

    // chain entries out of order, or an orbital index reaching n, must be
    // rejected with the matching structured error
    #[test]
    fn malformed_states_rejected(state in state_strategy(), bump in 1i64..4, pos_seed in 0usize..16) {
        // orbital too large for the principal number
        let mut mu_l = state.mu.clone();
        mu_l[0] = state.n as i64 - 1 + bump;
        if state.dim == 2 && *mu_l.last().unwrap() < 0 {
            mu_l[0] = -mu_l[0];
        }
        match QuantumState::new(state.dim, state.charge, state.n, mu_l) {
            Err(Error::InvalidState(StateError::OrbitalOutOfRange { .. })) => {}
            other => prop_assert!(false, "expected orbital rejection, got {:?}", other.map(|_| ())),
        }

        // break the non-increasing chain (needs at least two entries)
        if state.dim >= 3 {
            let mut mu_c = state.mu.clone();
            let pos = 1 + pos_seed % (mu_c.len() - 1);
            mu_c[pos] = mu_c[pos - 1].abs() + bump;
            if pos + 1 < mu_c.len() {
                // keep the tail below the bumped entry so only one violation exists
                for t in pos + 1..mu_c.len() {
                    mu_c[t] = mu_c[t].min(mu_c[pos]);
                }
            }
            // the bumped entry may exceed n-1 too; that check fires first for pos 0
            // only, so here the chain violation must be reported
            // the reported position is the index of the upper entry of the pair
            match QuantumState::new(state.dim, state.charge, state.n, mu_c) {
                Err(Error::InvalidState(StateError::MuChainViolation { position, .. })) => {
                    prop_assert_eq!(position, pos - 1);
                }
                other => prop_assert!(false, "expected chain rejection, got {:?}", other.map(|_| ())),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // the oracle must agree with itself when the mesh is pushed finer
    #[test]
    fn oracle_stable_under_refinement(state in state_strategy()) {
        let loose = radial_entropy_oracle(&state, &QuadratureConfig::default()).unwrap();
        let tight = radial_entropy_oracle(&state, &QuadratureConfig::tight()).unwrap();
        prop_assert!((loose.value - tight.value).abs() <= 1e-9 * (1.0 + loose.value.abs()));
    }
}
