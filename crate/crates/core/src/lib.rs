//! Shannon information entropies of D-dimensional hydrogenic states.
//!
//! For any discrete stationary state (D >= 2, nuclear charge Z > 0, quantum
//! numbers n, mu_1 >= mu_2 >= .. >= |mu_{D-1}|) the position-space entropy
//! splits into a radial and an angular part. This crate evaluates both in
//! closed form and, independently, by direct adaptive quadrature of the
//! defining integrals, so every closed expression ships with its own
//! ground truth.
//!
//! Layout:
//! - [`specfun`]: log-gamma/digamma (exact at half-integers), the three
//!   classical polynomial families, their roots, and Gauss rules.
//! - [`hypersum`]: terminating multivariable hypergeometric sums, the
//!   quadratic Laguerre coefficient grids (float and exact-rational), and
//!   closed-form angular entropic moments.
//! - [`quad`]: adaptive Gauss quadrature on finite and semi-infinite
//!   domains plus the two logarithmic integrals the formulas need.
//! - [`hydrogenic`]: state validation, derived parameters, densities.
//! - [`entropy`]: the closed-form engine - radial, two angular methods,
//!   special-family fast paths, totals, asymptotics.
//! - [`oracle`]: direct-quadrature references and the cross-method checker.
//!
//! ```
//! use hydroshannon::hydrogenic::QuantumState;
//! use hydroshannon::entropy::{total_entropy, Method};
//!
//! let state = QuantumState::new(3, 1.0, 2, vec![1, 0]).unwrap();
//! let s = total_entropy(&state, Method::ClosedForm).unwrap();
//! assert!((s.total - (s.radial + s.angular)).abs() == 0.0);
//! ```


// `!(x > 0.0)`-style guards reject NaN along with the out-of-range values;
// the partial_cmp rewrite clippy suggests would hide that intent.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod specfun;
pub mod hypersum;
pub mod quad;
pub mod hydrogenic;
pub mod entropy;
pub mod oracle;

pub use error::{Error, StateError};
pub use hydrogenic::QuantumState;
