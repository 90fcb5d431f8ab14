//! Gram–Schmidt orthogonalization of I, xI, x²I, … against a matrix
//! functional: the monic family with its block Gram data (exact-arithmetic
//! friendly), and the orthonormal family with recurrence matrices A_n, B_n.

use crate::functional::MatFunctional;
use crate::MatopError;
use numerics::{cholesky, ldlt, CholeskyError, Mat, Scalar};
use poly::MatPoly;

/// Monic orthogonal matrix polynomials Q_n with their squared norms
/// D_n = ⟨Q_n, Q_n⟩ and the shifted pairings E_n = ⟨xQ_n, Q_n⟩. Every step
/// is rational when the moments are, which is what the exact reconstruction
/// pipelines consume.
#[derive(Debug, Clone)]
pub struct MonicFamily<T: Scalar> {
    /// q[n] is monic of degree n (leading coefficient I).
    pub q: Vec<MatPoly<T>>,
    /// d[n] = ⟨Q_n, Q_n⟩, symmetric positive definite.
    pub d: Vec<Mat<T>>,
    /// e[n] = ⟨xQ_n, Q_n⟩; one entry shorter than `q` when the moment list
    /// is exactly long enough for the family itself.
    pub e: Vec<Mat<T>>,
}

/// Orthonormal family P_n = L_n⁻¹Q_n (L_n the Cholesky factor of D_n)
/// together with the recurrence data of
/// x P_n = A_{n+1} P_{n+1} + B_n P_n + A_nᵗ P_{n−1}.
#[derive(Debug, Clone)]
pub struct MatOPFamily<T: Scalar> {
    /// P_0 … P_N, leading coefficients lower triangular with positive
    /// diagonal.
    pub p: Vec<MatPoly<T>>,
    /// a[n−1] = A_n = L_{n−1}⁻¹ L_n for n = 1…N; lower triangular with
    /// positive diagonal by construction.
    pub a: Vec<Mat<T>>,
    /// b[n] = B_n = ⟨xP_n, P_n⟩, symmetric; runs through B_{N−1}.
    pub b: Vec<Mat<T>>,
    /// Cholesky factors L_0 … L_N of the monic norms.
    pub lfac: Vec<Mat<T>>,
}

impl<T: Scalar> MatOPFamily<T> {
    /// Highest polynomial degree in the family.
    pub fn len(&self) -> usize {
        self.p.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// A_n for n ≥ 1.
    pub fn a_n(&self, n: usize) -> &Mat<T> {
        &self.a[n - 1]
    }

    /// B_n for n ≥ 0.
    pub fn b_n(&self, n: usize) -> &Mat<T> {
        &self.b[n]
    }
}

fn left_mul<T: Scalar>(c: &Mat<T>, q: &MatPoly<T>) -> MatPoly<T> {
    &MatPoly::constant(c.clone()) * q
}

/// (M + Mᵗ)/2. The pairings below are symmetric in exact arithmetic; this
/// projection removes the last-bit asymmetry float summation introduces so
/// the factorizations (which check symmetry exactly) accept them.
fn symmetrize<T: Scalar>(m: &Mat<T>) -> Mat<T> {
    (&m.transpose() + m).scale(&T::from_ratio(1, 2))
}

/// Monic orthogonalization through degree `n_max`. Needs moments S_0 … S_{2·n_max};
/// when S_{2·n_max+1} is also present the shifted pairing E_{n_max} is filled in.
pub fn monic_family<T: Scalar>(
    f: &MatFunctional<T>,
    n_max: usize,
) -> Result<MonicFamily<T>, MatopError> {
    if f.moment_count() < 2 * n_max + 1 {
        return Err(MatopError::MomentsExhausted {
            needed: 2 * n_max + 1,
            available: f.moment_count(),
        });
    }
    let l = f.size();
    let mut q: Vec<MatPoly<T>> = Vec::with_capacity(n_max + 1);
    let mut d: Vec<Mat<T>> = Vec::with_capacity(n_max + 1);
    let mut dinv: Vec<Mat<T>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut qn = if n == 0 {
            MatPoly::identity(l)
        } else {
            q[n - 1].shift_up(1)
        };
        for j in 0..n {
            // ⟨xQ_{n−1}, Q_j⟩ D_j⁻¹ left-multiplies Q_j; orthogonality kills
            // all but the top two terms in exact arithmetic, and subtracting
            // the full sum also mops up floating-point drift.
            let c = &f.pair(&qn, &q[j])? * &dinv[j];
            qn = &qn - &left_mul(&c, &q[j]);
        }
        let dn = symmetrize(&f.pair(&qn, &qn)?);
        match ldlt(&dn) {
            Ok(_) => {}
            Err(CholeskyError::NotPositiveDefinite { .. }) => {
                return Err(MatopError::NotPositive { degree: n });
            }
            Err(e) => return Err(MatopError::Numerical(format!("norm block at degree {n}: {e}"))),
        }
        dinv.push(dn.inverse().map_err(|e| {
            MatopError::Numerical(format!("norm block at degree {n} is singular: {e}"))
        })?);
        d.push(dn);
        q.push(qn);
    }
    let mut e: Vec<Mat<T>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if f.moment_count() >= 2 * n + 2 {
            e.push(symmetrize(&f.pair_shifted(&q[n], &q[n], 1)?));
        } else {
            break;
        }
    }
    Ok(MonicFamily { q, d, e })
}

/// Orthonormal Gram–Schmidt family through degree `n_max`, with the paper
/// normalization: leading coefficients (hence every A_n) lower triangular
/// with positive diagonal.
pub fn matrix_gram_schmidt<T: Scalar>(
    f: &MatFunctional<T>,
    n_max: usize,
) -> Result<MatOPFamily<T>, MatopError> {
    let monic = monic_family(f, n_max)?;
    let mut lfac: Vec<Mat<T>> = Vec::with_capacity(n_max + 1);
    let mut linv: Vec<Mat<T>> = Vec::with_capacity(n_max + 1);
    for (n, dn) in monic.d.iter().enumerate() {
        let ln = match cholesky(dn) {
            Ok(ln) => ln,
            Err(CholeskyError::NotPositiveDefinite { .. }) => {
                return Err(MatopError::NotPositive { degree: n })
            }
            Err(CholeskyError::IrrationalPivot { pivot }) => {
                return Err(MatopError::Numerical(format!(
                    "norm block at degree {n} has no rational Cholesky factor (pivot {pivot}); \
                     run this family in float mode"
                )))
            }
            Err(e) => {
                return Err(MatopError::Numerical(format!("norm block at degree {n}: {e}")))
            }
        };
        linv.push(ln.inverse().map_err(|e| {
            MatopError::Numerical(format!("Cholesky factor at degree {n} is singular: {e}"))
        })?);
        lfac.push(ln);
    }
    let p: Vec<MatPoly<T>> = monic
        .q
        .iter()
        .zip(&linv)
        .map(|(qn, li)| left_mul(li, qn))
        .collect();
    let a: Vec<Mat<T>> = (1..=n_max).map(|n| &linv[n - 1] * &lfac[n]).collect();
    let b: Vec<Mat<T>> = monic
        .e
        .iter()
        .enumerate()
        .map(|(n, en)| symmetrize(&(&(&linv[n] * en) * &linv[n].transpose())))
        .collect();
    Ok(MatOPFamily { p, a, b, lfac })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{chebyshev_block, semicircle_moments};
    use numerics::{rat, Rat};

    #[test]
    fn chebyshev_monic_norms_are_quarter_powers() {
        let f = chebyshev_block(9, 2);
        let fam = monic_family(&f, 4).unwrap();
        for n in 0..=4 {
            let expected = Mat::identity(2).scale(&rat(1, 4i64.pow(n as u32)));
            assert_eq!(fam.d[n as usize], expected);
        }
        // Monic Chebyshev: Q_2 = x²I − ¼I.
        assert_eq!(fam.q[2].coeff(0), Mat::identity(2).scale(&rat(-1, 4)));
        assert_eq!(fam.q[2].coeff(1), Mat::zeros(2, 2));
        assert_eq!(fam.q[2].coeff(2), Mat::identity(2));
    }

    #[test]
    fn chebyshev_family_is_flat() {
        let f = chebyshev_block(9, 2);
        let fam = matrix_gram_schmidt(&f, 4).unwrap();
        let half = Mat::identity(2).scale(&rat(1, 2));
        for n in 1..=4 {
            assert_eq!(fam.a_n(n), &half);
        }
        for n in 0..4 {
            assert_eq!(fam.b_n(n), &Mat::zeros(2, 2));
        }
        // P_n has the Chebyshev U coefficients on the diagonal.
        for n in 0..=4usize {
            let u: poly::Poly<Rat> = poly::cheb_u(n as i64);
            assert_eq!(fam.p[n].entry(0, 0), u);
            assert_eq!(fam.p[n].entry(0, 1), poly::Poly::zero());
        }
    }

    #[test]
    fn orthonormality_holds_exactly() {
        let f = chebyshev_block(9, 2);
        let fam = matrix_gram_schmidt(&f, 3).unwrap();
        for n in 0..=3 {
            for m in 0..=3 {
                let g = f.pair(&fam.p[n], &fam.p[m]).unwrap();
                let expected = if n == m { Mat::identity(2) } else { Mat::zeros(2, 2) };
                assert_eq!(g, expected, "pairing ({n},{m})");
            }
        }
    }

    #[test]
    fn irrational_pivots_point_to_float_mode() {
        // S_j = h_j·[[1, 1/3],[1/3, 2]]: positive, but the second Cholesky
        // pivot is 17/9 whose square root is irrational.
        let base = Mat::from_rows(vec![vec![rat(1, 1), rat(1, 3)], vec![rat(1, 3), rat(2, 1)]]);
        let f = MatFunctional::new(
            semicircle_moments(9).into_iter().map(|c| base.scale(&c)).collect(),
        )
        .unwrap();
        assert!(monic_family(&f, 3).is_ok());
        match matrix_gram_schmidt(&f, 3) {
            Err(MatopError::Numerical(msg)) => assert!(msg.contains("float mode")),
            other => panic!("expected the float-mode hint, got {other:?}"),
        }
    }

    #[test]
    fn recurrence_residual_vanishes() {
        // The same coupled functional in float mode: a full three-term
        // recurrence check x·P_n = A_{n+1}P_{n+1} + B_nP_n + A_nᵗP_{n−1}.
        let base = Mat::from_rows(vec![vec![1.0, 1.0 / 3.0], vec![1.0 / 3.0, 2.0]]);
        let f = MatFunctional::new(
            semicircle_moments(9)
                .into_iter()
                .map(|c| base.scale(&Scalar::to_f64(&c)))
                .collect(),
        )
        .unwrap();
        let fam = matrix_gram_schmidt(&f, 3).unwrap();
        for n in 1..3usize {
            let x_pn = fam.p[n].shift_up(1);
            let rhs = &(&left_mul(fam.a_n(n + 1), &fam.p[n + 1]) + &left_mul(fam.b_n(n), &fam.p[n]))
                + &left_mul(&fam.a_n(n).transpose(), &fam.p[n - 1]);
            assert!(x_pn.max_abs_diff(&rhs) < 1e-12, "degree {n}");
        }
        // Orthonormality in floats.
        for n in 0..=3 {
            for m in 0..=3 {
                let g = f.pair(&fam.p[n], &fam.p[m]).unwrap();
                let expected = if n == m {
                    Mat::identity(2)
                } else {
                    Mat::zeros(2, 2)
                };
                assert!(g.max_abs_diff(&expected) < 1e-12, "pairing ({n},{m})");
            }
        }
    }

    #[test]
    fn rank_deficient_moments_fail_with_the_degree() {
        // Moments of the two-point measure ½(δ_{1/2} + δ_{−1/2}): the Gram
        // block of {I, xI, x²I} is singular.
        let h: Vec<Rat> = (0..5)
            .map(|j| {
                if j % 2 == 0 {
                    rat(1, 2i64.pow(j))
                } else {
                    rat(0, 1)
                }
            })
            .collect();
        let f = MatFunctional::from_scalar_moments(&h).unwrap();
        match monic_family(&f, 2) {
            Err(MatopError::NotPositive { degree: 2 }) => {}
            other => panic!("expected NotPositive at degree 2, got {other:?}"),
        }
    }

    #[test]
    fn short_moment_lists_are_reported() {
        let f = chebyshev_block(5, 1);
        match monic_family(&f, 3) {
            Err(MatopError::MomentsExhausted { needed: 7, available: 5 }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }
}
