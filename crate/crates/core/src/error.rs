//! Error types shared by every module in the crate.

use std::fmt;

/// Everything that can go wrong when evaluating entropies.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A quantum-number tuple violates one of the state invariants.
    InvalidState(StateError),
    /// A polynomial spec violates its parameter domain.
    InvalidPolynomial(String),
    /// An argument outside an operation's documented domain.
    InvalidArgument(String),
    /// A hypergeometric spec whose sum does not terminate.
    NonTerminating(String),
    /// Adaptive quadrature (or a derived iteration) failed to reach the
    /// requested tolerance; carries the best estimate so callers can decide.
    NonConvergent {
        context: String,
        value: f64,
        error_estimate: f64,
        tolerance: f64,
    },
    /// A density failed its unit-normalization precondition check.
    NormalizationCheck {
        context: String,
        integral: f64,
        tolerance: f64,
    },
    /// A special-family fast path was asked for a state outside the family.
    NotSpecialCase(String),
}

/// The specific state invariant that failed, reported distinctly so callers
/// (and the CLI) can name it.
#[derive(Debug, Clone, PartialEq)]
pub enum StateError {
    /// D must be at least 2.
    DimensionTooSmall { dim: u32 },
    /// Z must be a positive finite real.
    ChargeNotPositive { charge: f64 },
    /// n must be at least 1.
    PrincipalTooSmall,
    /// mu must have exactly D-1 entries.
    MuLengthMismatch { expected: usize, got: usize },
    /// l must satisfy 0 <= l <= n-1.
    OrbitalOutOfRange { l: u32, n: u32 },
    /// The chain mu_1 >= mu_2 >= ... >= |mu_{D-1}| >= 0 is violated between
    /// positions `position` and `position + 1` (0-based).
    MuChainViolation { position: usize, upper: i64, lower: i64 },
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::DimensionTooSmall { dim } => {
                write!(f, "dimension must be >= 2, got {dim}")
            }
            StateError::ChargeNotPositive { charge } => {
                write!(f, "charge must be a positive finite real, got {charge}")
            }
            StateError::PrincipalTooSmall => write!(f, "principal number n must be >= 1"),
            StateError::MuLengthMismatch { expected, got } => {
                write!(f, "mu list must have D-1 = {expected} entries, got {got}")
            }
            StateError::OrbitalOutOfRange { l, n } => {
                write!(f, "l exceeds n-1 (l={l}, n={n})")
            }
            StateError::MuChainViolation { position, upper, lower } => write!(
                f,
                "mu chain must be non-increasing down to |m|: mu[{}]={} < mu[{}]={}",
                position,
                upper,
                position + 1,
                lower
            ),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidState(e) => write!(f, "invalid state: {e}"),
            Error::InvalidPolynomial(msg) => write!(f, "invalid polynomial spec: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NonTerminating(msg) => write!(f, "non-terminating sum: {msg}"),
            Error::NonConvergent { context, value, error_estimate, tolerance } => write!(
                f,
                "{context}: did not converge (value {value:.17e}, error estimate {error_estimate:.3e}, tolerance {tolerance:.3e})"
            ),
            Error::NormalizationCheck { context, integral, tolerance } => write!(
                f,
                "{context}: density normalization check failed, integral = {integral:.17e} (tolerance {tolerance:.3e})"
            ),
            Error::NotSpecialCase(msg) => write!(f, "not a special-family state: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<StateError> for Error {
    fn from(e: StateError) -> Self {
        Error::InvalidState(e)
    }
}
