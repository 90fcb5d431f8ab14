//! Bivariate Bernstein-Szegő weights on the square [−1, 1]².
//!
//! The weights treated here have the form
//!
//! ```text
//!   dμ = (4/π²) · √(1−x²) √(1−y²) / ( q(x) · p(x,w) p(x,1/w) ) dx dy,
//!   y = (w + 1/w)/2,
//! ```
//!
//! with `q` a polynomial positive on (−1, 1) and `p(x, w)` a bivariate
//! polynomial that does not vanish for `x` in the interval and `w` in the
//! unit disk.  Such weights are exactly the ones whose vector orthogonal
//! polynomials have *flat* recurrence coefficients beyond a finite degree:
//! the matrix recurrence terms become `A = ½I`, `B = 0`.
//!
//! This crate provides the finite computational core of that theory:
//!
//! * [`MomentTable`] — a rectangular table of mixed moments
//!   `h[k][l] = L(x^k y^l)` and the block-Hankel matrix functionals built
//!   from it.
//! * [`bezout_rhs`] — the Bezout-type kernel `K(x; y, y₁)` assembled from
//!   two consecutive vector orthogonal families.  For a genuine weight of
//!   the above form the kernel collapses to a product formula in `q` and
//!   the fiber orthogonal polynomials of `p`.
//! * [`reconstruct_qp`] — exact recovery of `(q, p)` from the kernel, via
//!   square-free factorization and exact polynomial division.
//! * [`stability_certificate`] — certification that a recovered pair
//!   defines a genuine weight (fiber-symbol nonvanishing on the open
//!   square, invertibility of the reversed symbol on (−1, 1)).
//! * [`forward_verify`] — quadrature of a weight specification back into a
//!   moment table and measurement of recurrence flatness, including
//!   weights extended by point masses and curve masses.
//! * [`recover_omega`] — splitting a two-sided weight into its irreducible
//!   torus factor.
//! * [`uniqueness_probe`] — comparison of two positive densities through
//!   their moment tables.
//!
//! Exact paths run over [`numerics::Rat`]; floating paths use `f64` with the
//! tolerances in [`numerics::ToleranceConfig`].

mod certify;
pub mod fixtures;
mod kernel;
mod reconstruct;
mod table;
#[cfg(test)]
pub(crate) mod testdata;

pub use certify::{stability_certificate, zeros_inside_disk, FiberZero, StabilityReport};
pub use kernel::{bezout_rhs, bezout_rhs_with_basis, BezoutKernel};
pub use reconstruct::{reconstruct_qp, reconstruct_qp_f64, Reconstruction};
pub use table::{functional_to_matrix, MomentTable, Orientation, VectorOPFamily};

use std::fmt;

/// Errors reported by the bivariate layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Bs2dError {
    /// A moment table (or a block functional built from it) is not positive
    /// definite; `degree` is the first level at which positivity fails.
    NotPositive { degree: usize },
    /// The table does not hold enough moments for the requested operation.
    MomentsExhausted { needed: usize, available: usize },
    /// The kernel does not admit the product structure: some exact division
    /// or identity required by the reconstruction fails.
    NoSolution { stage: &'static str },
    /// The diagonal kernel slot used to normalize the reconstruction is
    /// identically zero, so no factorization exists.
    DegenerateNormalization,
    /// Nonvanishing of the fiber symbol could not be decided within the
    /// subdivision budget; the suspect box is reported.
    Undecided { x_lo: f64, x_hi: f64, w_lo: f64, w_hi: f64 },
    /// Quadrature failed to stabilize within the doubling budget.
    NoConvergence { residual: f64 },
    /// The two one-sided symbols share no nonconstant factor.
    GcdTrivial,
    /// A recovered factor fails its defining identity.
    ResidualNonzero { what: &'static str, residual: f64 },
    /// A floating-point subroutine failed; the message names it.
    Numerical(String),
}

impl fmt::Display for Bs2dError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bs2dError::NotPositive { degree } => {
                write!(f, "moment table is not positive definite at level {degree}")
            }
            Bs2dError::MomentsExhausted { needed, available } => {
                write!(f, "need {needed} moment rows, table holds {available}")
            }
            Bs2dError::NoSolution { stage } => {
                write!(f, "kernel has no product factorization (failed at: {stage})")
            }
            Bs2dError::DegenerateNormalization => {
                write!(f, "diagonal kernel slot vanishes identically")
            }
            Bs2dError::Undecided { x_lo, x_hi, w_lo, w_hi } => write!(
                f,
                "nonvanishing undecided on box [{x_lo}, {x_hi}] × [{w_lo}, {w_hi}]"
            ),
            Bs2dError::NoConvergence { residual } => {
                write!(f, "quadrature did not stabilize (residual {residual:.3e})")
            }
            Bs2dError::GcdTrivial => {
                write!(f, "one-sided symbols share no nonconstant factor")
            }
            Bs2dError::ResidualNonzero { what, residual } => {
                write!(f, "{what} fails its defining identity (residual {residual:.3e})")
            }
            Bs2dError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Bs2dError {}

impl From<matop::MatopError> for Bs2dError {
    fn from(e: matop::MatopError) -> Self {
        match e {
            matop::MatopError::NotPositive { degree } => Bs2dError::NotPositive { degree },
            matop::MatopError::MomentsExhausted { needed, available } => {
                Bs2dError::MomentsExhausted { needed, available }
            }
            other => Bs2dError::Numerical(other.to_string()),
        }
    }
}
