//! Weights of the form (2/π)·√(1−y²)/|q(w)|² on (−1, 1), y = (w + 1/w)/2:
//! validated symbols, exact moments, Hankel determinants in closed form,
//! orthogonal polynomials with their reproducing kernels, and recovery of
//! the symbol from a positive-definite Hankel matrix.

use std::fmt;

pub mod delta;
pub mod moments;
pub mod ortho;
pub mod recover;
pub mod stable;

pub use delta::delta_m;
pub use moments::{hankel_matrix, moments_from_q};
pub use ortho::{orthonormal_from_q, reproducing_kernel, OrthoResult};
pub use recover::{recover_q_from_hankel, RecoveredSymbol};
pub use stable::{is_schur_stable, stable_fejer_riesz, StableFactor};

#[derive(Debug, Clone, PartialEq)]
pub enum Bs1dError {
    /// The weight denominator takes a negative value on the interval.
    NotPositive { at: f64, value: f64 },
    /// A root of the lifted denominator has no partner under w ↦ 1/w within
    /// tolerance, so no symmetric factorization exists numerically.
    UnpairedRoots { re: f64, im: f64 },
    /// The denominator vanishes on the unit circle away from ±1, which makes
    /// the weight non-integrable.
    InteriorUnitRoot { re: f64, im: f64 },
    /// The symbol is not admissible (zeros in the closed disk beyond simple
    /// ones at ±1, wrong sign at the origin, and so on).
    NotStable { reason: &'static str },
    /// The requested index sits in no valid normalization regime for the
    /// symbol's degree.
    RegimeViolation { index: usize, degree: usize },
    /// A moment matrix that must be positive definite is not.
    NotPositiveDefinite { pivot: usize },
    /// Numerical or structural failure with context.
    Numerical(String),
}

impl fmt::Display for Bs1dError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bs1dError::NotPositive { at, value } => {
                write!(f, "weight denominator is negative at x = {at}: {value}")
            }
            Bs1dError::UnpairedRoots { re, im } => {
                write!(f, "root {re} + {im}i has no partner under inversion")
            }
            Bs1dError::InteriorUnitRoot { re, im } => {
                write!(f, "unit-circle zero at {re} + {im}i away from ±1")
            }
            Bs1dError::NotStable { reason } => {
                write!(f, "symbol is not admissible: {reason}")
            }
            Bs1dError::RegimeViolation { index, degree } => {
                write!(
                    f,
                    "index {index} is in no valid regime for degree {degree}"
                )
            }
            Bs1dError::NotPositiveDefinite { pivot } => {
                write!(f, "moment matrix is not positive definite (pivot {pivot})")
            }
            Bs1dError::Numerical(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Bs1dError {}
