//! Closed-form orthogonal polynomials for the symbol weight, and the
//! reproducing-kernel coefficient matrix of a truncated moment sequence.
//!
//! The k-th member is p_k(y) = Σ_j q_j U_{k−j}(y) with the second-kind
//! Chebyshev convention U_{−1} = 0, U_{−k−2} = −U_k. For a symbol of degree
//! m this family is orthonormal as soon as 2k + 1 ≥ m; at the edge
//! m = 2k + 2 it is still orthogonal to lower degrees but carries squared
//! norm (q₀ − q_m)/q₀ instead of 1. Below that the formula stops being
//! orthogonal and the request is refused.

use crate::moments::hankel_matrix;
use crate::Bs1dError;
use numerics::{ldlt, CholeskyError, Mat, Rat, Scalar};
use poly::{u_component, Poly};

/// One member of the family attached to a symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoResult {
    /// Polynomial in y, degree `index`.
    pub poly: Poly<Rat>,
    /// Squared norm under the moment functional (1 in the orthonormal range).
    pub norm_sq: Rat,
    /// Degree k of this member.
    pub index: usize,
}

/// The degree-k orthogonal polynomial of the weight with symbol q.
pub fn orthonormal_from_q(q: &Poly<Rat>, k: usize) -> Result<OrthoResult, Bs1dError> {
    let m = q.deg();
    if m < 0 {
        return Err(Bs1dError::NotStable {
            reason: "zero symbol",
        });
    }
    let m = m as usize;
    if 2 * k + 1 >= m {
        Ok(OrthoResult {
            poly: u_component(q, k as i64),
            norm_sq: Rat::one(),
            index: k,
        })
    } else if 2 * k + 2 == m {
        let q0 = q.coeff(0);
        let norm_sq = (q0.clone() - q.coeff(m)) * q0.recip();
        Ok(OrthoResult {
            poly: u_component(q, k as i64),
            norm_sq,
            index: k,
        })
    } else {
        Err(Bs1dError::RegimeViolation {
            index: k,
            degree: m,
        })
    }
}

/// Inverse of the (k+1)×(k+1) moment Hankel matrix built from h_0, …, h_{2k}.
///
/// Entry (i, j) is the coefficient of y^i y₁^j in the degree-k reproducing
/// kernel of the functional. Fails with the offending pivot when the moments
/// are not strictly positive definite.
pub fn reproducing_kernel(h: &[Rat]) -> Result<Mat<Rat>, Bs1dError> {
    let hk = hankel_matrix(h);
    match ldlt(&hk) {
        Ok(_) => {}
        Err(CholeskyError::NotPositiveDefinite { pivot }) => {
            return Err(Bs1dError::NotPositiveDefinite { pivot })
        }
        Err(e) => return Err(Bs1dError::Numerical(e.to_string())),
    }
    hk.inverse()
        .map_err(|e| Bs1dError::Numerical(e.to_string()))
}
