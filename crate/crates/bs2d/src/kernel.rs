//! The Bezout-type kernel of a moment table.
//!
//! Two consecutive orthonormal vector families combine into the kernel
//!
//! ```text
//!   K(x; y, y₁) = P_n(x,y)ᵗ P_n(x,y₁)
//!               − 4x · P_n(x,y)ᵗ A_nᵗ P_{n−1}(x,y₁)
//!               + 4 · P_{n−1}(x,y)ᵗ A_n A_nᵗ P_{n−1}(x,y₁),
//! ```
//!
//! a polynomial of degree at most `2n` in `x` and `m` in each of `y, y₁`.
//! For a moment table coming from a weight
//! `(4/π²)·√(1−x²)√(1−y²)/(q·|p|²)` the kernel collapses to the product
//! form recovered by [`crate::reconstruct_qp`].
//!
//! The kernel is computed exactly over any scalar by eliminating the
//! orthonormalizing square roots: with monic vector polynomials `Q_k` and
//! their Gram matrices `D_k = ⟨Q_k, Q_k⟩`,
//!
//! ```text
//!   W(x) = Q_nᵗ D_n⁻¹ Q_n  −  4x · Q_nᵗ D_{n−1}⁻¹ Q_{n−1}
//!        + 4 · Q_{n−1}ᵗ D_{n−1}⁻¹ D_n D_{n−1}⁻¹ Q_{n−1},
//! ```
//!
//! and `K(x; y, y₁) = Σ_{i,j} W_{ij}(x) y^i y₁^j`.  The kernel matrix `W`
//! does not depend on the inner basis used to build the vector families.

use crate::table::{functional_to_matrix, transformed_functional, MomentTable};
use crate::Bs2dError;
use matop::monic_family;
use numerics::{Mat, Scalar};
use poly::{MatPoly, Poly};

/// The kernel matrix `W(x)`: entry `(i, j)` is the coefficient of
/// `y^i y₁^j` as a polynomial in `x`.
#[derive(Debug, Clone)]
pub struct BezoutKernel<T: Scalar> {
    /// Outer degree: `x`-degrees reach `2n`.
    pub n: usize,
    /// Inner degree: the matrix is `(m+1) × (m+1)`.
    pub m: usize,
    w: MatPoly<T>,
}

impl<T: Scalar> BezoutKernel<T> {
    /// Wrap an explicit kernel matrix (sized `(m+1) × (m+1)`).
    pub fn from_parts(n: usize, m: usize, w: MatPoly<T>) -> Self {
        assert_eq!(w.size(), m + 1, "kernel matrix must be (m+1)×(m+1)");
        BezoutKernel { n, m, w }
    }

    /// The `x`-polynomial multiplying `y^i y₁^j`.
    pub fn entry(&self, i: usize, j: usize) -> Poly<T> {
        self.w.entry(i, j)
    }

    /// The kernel matrix as a matrix polynomial in `x`.
    pub fn matrix(&self) -> &MatPoly<T> {
        &self.w
    }

    /// Evaluate `K(x; y, y₁)`.
    pub fn eval(&self, x: &T, y: &T, y1: &T) -> T {
        let wx = self.w.eval(x);
        let mut acc = T::zero();
        let mut yi = T::one();
        for i in 0..=self.m {
            let mut y1j = T::one();
            for j in 0..=self.m {
                acc = acc + wx[(i, j)].clone() * yi.clone() * y1j.clone();
                y1j = y1j * y1.clone();
            }
            yi = yi * y.clone();
        }
        acc
    }

    /// Whether `W(x) = W(x)ᵗ` identically — true for every table coming
    /// from a genuine weight, so a cheap structural diagnostic.
    pub fn is_symmetric(&self) -> bool {
        self.w.max_abs_diff(&self.w.transpose()) == 0.0
    }

    /// Float copy.
    pub fn to_f64(&self) -> BezoutKernel<f64> {
        BezoutKernel { n: self.n, m: self.m, w: self.w.map(|c| Scalar::to_f64(c)) }
    }
}

/// Assemble the kernel of a moment table at outer degree `n` and inner
/// degree `m`, exactly.  The table must hold moments up to `(2n, 2m)` and
/// be positive definite at the required levels.
pub fn bezout_rhs<T: Scalar>(
    table: &MomentTable<T>,
    n: usize,
    m: usize,
) -> Result<BezoutKernel<T>, Bs2dError> {
    if n > table.x_level() || m > table.y_level() {
        return Err(Bs2dError::MomentsExhausted {
            needed: (2 * n).max(2 * m),
            available: (2 * table.x_level()).min(2 * table.y_level()),
        });
    }
    let functional = functional_to_matrix(table, m)?;
    kernel_from_functional(&functional, n, m)
}

/// Same kernel, but with the block moments transformed by a degree-graded
/// inner basis with coefficient matrix `c` (row `i` = coefficients of
/// `β_i`) before orthogonalization, and mapped back to monomial
/// coordinates afterwards.  The result equals [`bezout_rhs`] exactly —
/// the kernel is basis independent.
pub fn bezout_rhs_with_basis<T: Scalar>(
    table: &MomentTable<T>,
    n: usize,
    m: usize,
    c: &Mat<T>,
) -> Result<BezoutKernel<T>, Bs2dError> {
    assert_eq!(c.nrows(), m + 1, "basis matrix size must be m+1");
    if n > table.x_level() || m > table.y_level() {
        return Err(Bs2dError::MomentsExhausted {
            needed: (2 * n).max(2 * m),
            available: (2 * table.x_level()).min(2 * table.y_level()),
        });
    }
    let functional = transformed_functional(table, c)?;
    let in_basis = kernel_from_functional(&functional, n, m)?;
    // K = β⃗(y)ᵗ W_b β⃗(y₁) = y⃗ᵗ (Cᵗ W_b C) y⃗₁.
    let ct = MatPoly::constant(c.transpose());
    let cc = MatPoly::constant(c.clone());
    let w = &(&ct * &in_basis.w) * &cc;
    Ok(BezoutKernel { n, m, w })
}

fn kernel_from_functional<T: Scalar>(
    functional: &matop::MatFunctional<T>,
    n: usize,
    m: usize,
) -> Result<BezoutKernel<T>, Bs2dError> {
    let fam = monic_family(functional, n)?;
    let qn = &fam.q[n];
    let dn_inv = fam.d[n]
        .inverse()
        .map_err(|e| Bs2dError::Numerical(format!("Gram inverse: {e}")))?;
    let qn_t = qn.transpose();
    let mut w = &qn_t * &(&MatPoly::constant(dn_inv.clone()) * qn);
    if n > 0 {
        let qp = &fam.q[n - 1];
        let dp_inv = fam.d[n - 1]
            .inverse()
            .map_err(|e| Bs2dError::Numerical(format!("Gram inverse: {e}")))?;
        let qp_t = qp.transpose();
        let four = T::from_int(4);
        // −4x · Qnᵗ D_{n−1}⁻¹ Q_{n−1}
        let cross = &qn_t * &(&MatPoly::constant(dp_inv.clone()) * qp);
        w = &w - &cross.shift_up(1).scale(&four);
        // +4 · Q_{n−1}ᵗ D_{n−1}⁻¹ D_n D_{n−1}⁻¹ Q_{n−1}
        let middle = &(&dp_inv * &fam.d[n]) * &dp_inv;
        let tail = &qp_t * &(&MatPoly::constant(middle) * qp);
        w = &w + &tail.scale(&four);
    }
    Ok(BezoutKernel { n, m, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::chebyshev_table;
    use numerics::rat;

    #[test]
    fn chebyshev_kernel_is_constant_diagonal() {
        // Product Chebyshev weight: q = 1, p = 1, so the kernel must be
        // Σ_{j≤m} U_j(y)U_j(y₁), i.e. W = diag(1, 4) at m = 1, any n.
        for n in 1..=2 {
            let t = chebyshev_table(2, 1);
            let k = bezout_rhs(&t, n, 1).unwrap();
            assert!(k.is_symmetric());
            assert_eq!(k.entry(0, 0), Poly::constant(rat(1, 1)));
            assert_eq!(k.entry(0, 1), Poly::zero());
            assert_eq!(k.entry(1, 0), Poly::zero());
            assert_eq!(k.entry(1, 1), Poly::constant(rat(4, 1)));
        }
    }

    #[test]
    fn kernel_eval_matches_entries() {
        let t = chebyshev_table(2, 1);
        let k = bezout_rhs(&t, 2, 1).unwrap();
        let v = k.eval(&rat(1, 3), &rat(1, 2), &rat(-2, 5));
        // 1 + 4·y·y₁ = 1 + 4·(1/2)(−2/5) = 1 − 4/5 = 1/5.
        assert_eq!(v, rat(1, 5));
    }

    #[test]
    fn kernel_is_basis_independent() {
        let t = chebyshev_table(2, 1);
        let base = bezout_rhs(&t, 2, 1).unwrap();
        // β_0 = 2, β_1 = 3y − 1: lower triangular, nonzero diagonal.
        let c = Mat::from_rows(vec![vec![rat(2, 1), rat(0, 1)], vec![rat(-1, 1), rat(3, 1)]]);
        let alt = bezout_rhs_with_basis(&t, 2, 1, &c).unwrap();
        assert_eq!(base.matrix().max_abs_diff(alt.matrix()), 0.0);
    }
}
