//! The z-plane matrix function Ψ̂_N(z) = z^N(P_N(x) − 2z·A_Nᵗ P_{N−1}(x))
//! with x = (z + 1/z)/2, expanded exactly into a matrix polynomial in z,
//! together with its degree bookkeeping: degree 2N exactly when A_N ≠ ½I,
//! degree 2N−1 when A_N = ½I but B_{N−1} ≠ 0.

use crate::gram::MatOPFamily;
use crate::MatopError;
use numerics::{Mat, Scalar};
use poly::{cheb_substitute, MatPoly, Poly};

/// Ψ̂ at one level, with the consistency data of the degree law.
#[derive(Debug, Clone)]
pub struct PsiHat<T: Scalar> {
    /// The matrix polynomial Ψ̂_N(z).
    pub mat: MatPoly<T>,
    /// The level N it was built at.
    pub level: usize,
    /// Effective degree after trimming trailing blocks below 1e-12 of the
    /// coefficient scale.
    pub degree: usize,
    /// Whether A_N = ½I at that scale-relative tolerance.
    pub a_level_is_half_identity: bool,
    /// Whether B_{N−1} = 0 at that tolerance.
    pub b_prev_is_zero: bool,
}

impl<T: Scalar> PsiHat<T> {
    /// True when the observed degree matches the degree law implied by the
    /// two flags (2N, 2N−1, or below when the tail is flat).
    pub fn degree_law_consistent(&self) -> bool {
        let n2 = 2 * self.level;
        if !self.a_level_is_half_identity {
            self.degree == n2
        } else if !self.b_prev_is_zero {
            self.degree == n2 - 1
        } else {
            self.degree < n2 - 1
        }
    }
}

/// z^shift · p((z + 1/z)/2) as a polynomial in z; requires shift ≥ deg p.
pub(crate) fn z_lift<T: Scalar>(p: &Poly<T>, shift: usize) -> Poly<T> {
    debug_assert!(p.deg() <= shift as i64);
    cheb_substitute(p)
        .shift(shift as i64)
        .to_poly()
        .expect("shift clears all negative exponents")
}

/// Largest coefficient magnitude across all blocks.
fn coeff_scale<T: Scalar>(m: &MatPoly<T>) -> f64 {
    m.coeffs().iter().map(Mat::max_abs).fold(0.0, f64::max)
}

/// Degree after ignoring trailing blocks smaller than `tol` in magnitude.
fn trimmed_degree<T: Scalar>(m: &MatPoly<T>, tol: f64) -> usize {
    let mut deg = 0;
    for (k, c) in m.coeffs().iter().enumerate() {
        if c.max_abs() > tol {
            deg = k;
        }
    }
    deg
}

/// Build Ψ̂_N from an orthonormal family. Requires 1 ≤ N ≤ family length.
pub fn psi_hat<T: Scalar>(fam: &MatOPFamily<T>, n: usize) -> Result<PsiHat<T>, MatopError> {
    if n < 1 || n > fam.len() {
        return Err(MatopError::Numerical(format!(
            "level {n} is outside the family range 1..={}",
            fam.len()
        )));
    }
    let l = fam.p[0].coeff(0).nrows();
    let p_n = &fam.p[n];
    let p_prev = &(&MatPoly::constant(fam.a_n(n).transpose()) * &fam.p[n - 1]);
    let lift_entry = |src: &MatPoly<T>, shift: usize, i: usize, j: usize| -> Poly<T> {
        z_lift(&src.entry(i, j), shift)
    };
    let mut entries = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(l);
        for j in 0..l {
            let main = lift_entry(p_n, n, i, j);
            let lower = lift_entry(p_prev, n + 1, i, j).scale(&T::from_int(-2));
            row.push(&main + &lower);
        }
        entries.push(row);
    }
    let mat = MatPoly::from_entries(&entries);

    let scale = coeff_scale(&mat).max(1e-300);
    let tol = 1e-12 * scale;
    let degree = trimmed_degree(&mat, tol);
    let half_identity = Mat::identity(l).scale(&T::from_ratio(1, 2));
    let a_flat = fam.a_n(n).max_abs_diff(&half_identity) <= tol;
    let b_prev_zero = if n >= 1 && fam.b.len() >= n {
        fam.b_n(n - 1).max_abs() <= tol
    } else {
        true
    };
    Ok(PsiHat {
        mat,
        level: n,
        degree,
        a_level_is_half_identity: a_flat,
        b_prev_is_zero: b_prev_zero,
    })
}
