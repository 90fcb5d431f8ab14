//! Matrix-valued orthogonal polynomials on (−1, 1): Gram–Schmidt families
//! with their three-term recurrences, the associated z-plane functions Ψ̂,
//! zero analysis with canonical point masses, reconstruction of a functional
//! from its weight data, and matrix Fejér–Riesz factorization.

use std::fmt;

pub mod fejer;
pub mod functional;
pub mod gram;
pub mod psi;
pub mod represent;
pub mod weight;
pub mod zeros;

pub use fejer::matrix_fejer_riesz;
pub use functional::MatFunctional;
pub use gram::{matrix_gram_schmidt, monic_family, MatOPFamily, MonicFamily};
pub use psi::{psi_hat, PsiHat};
pub use represent::{weight_representation, WeightRepresentation};
pub use weight::{canonical_weight, functional_from_psi, weight_from_psi, CanonicalMass};
pub use zeros::{psi_zero_analysis, PsiZero};

#[derive(Debug, Clone, PartialEq)]
pub enum MatopError {
    /// A Gram block that must be positive definite fails its Cholesky pivot;
    /// reports the polynomial degree at which orthonormalization broke down.
    NotPositive { degree: usize },
    /// The moment list is too short for the requested family length.
    MomentsExhausted { needed: usize, available: usize },
    /// det Ψ̂ vanishes somewhere in the closed disk away from the real
    /// interval, so the input cannot come from a positive functional.
    ZeroOffRealInterval { re: f64, im: f64 },
    /// A zero of Ψ̂ fails the simplicity test (determinant multiplicity
    /// exceeds the kernel dimension, or the derivative pairing is singular).
    NonSimpleZero { z0: f64 },
    /// The point passed to the canonical-weight construction is not a simple
    /// zero of Ψ̂ in (−1,0)∪(0,1).
    NotASimpleZero { z0: f64, reason: &'static str },
    /// A supplied point mass disagrees with the residue of Ψ̂⁻¹ at its zero.
    InconsistentMasses { at: f64, residual: f64 },
    /// The weight fails the positive-definiteness probe on the interval grid.
    NotPositiveOnGrid { at: f64, eigenvalue: f64 },
    /// An iterative scheme (Bauer factorization, moment quadrature) did not
    /// stabilize within its budget; reports the achieved residual.
    NoConvergence { residual: f64 },
    /// Numerical or structural failure with context.
    Numerical(String),
}

impl fmt::Display for MatopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatopError::NotPositive { degree } => {
                write!(f, "moment functional is not positive at degree {degree}")
            }
            MatopError::MomentsExhausted { needed, available } => {
                write!(f, "need {needed} moment matrices but only {available} are available")
            }
            MatopError::ZeroOffRealInterval { re, im } => {
                write!(f, "det Ψ̂ vanishes at {re} + {im}i off the real interval")
            }
            MatopError::NonSimpleZero { z0 } => {
                write!(f, "zero of Ψ̂ at z = {z0} is not simple")
            }
            MatopError::NotASimpleZero { z0, reason } => {
                write!(f, "z = {z0} is not a usable simple zero: {reason}")
            }
            MatopError::InconsistentMasses { at, residual } => {
                write!(f, "mass at x = {at} disagrees with the Ψ̂⁻¹ residue (residual {residual:.3e})")
            }
            MatopError::NotPositiveOnGrid { at, eigenvalue } => {
                write!(f, "weight has eigenvalue {eigenvalue:.3e} at x = {at}")
            }
            MatopError::NoConvergence { residual } => {
                write!(f, "iteration did not stabilize (residual {residual:.3e})")
            }
            MatopError::Numerical(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for MatopError {}
