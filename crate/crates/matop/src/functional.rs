//! Matrix-valued moment functionals: a list of symmetric moment matrices
//! S_j together with the bilinear pairing ⟨F, G⟩ = Σ F_i S_{i+j} G_jᵗ they
//! induce on matrix polynomials.

use crate::MatopError;
use numerics::{Mat, Scalar};
use poly::MatPoly;

/// A linear functional ℝ[x] → Sym(ℝ^{l×l}) known through its moments.
#[derive(Debug, Clone, PartialEq)]
pub struct MatFunctional<T> {
    l: usize,
    moments: Vec<Mat<T>>,
}

impl<T: Scalar> MatFunctional<T> {
    /// Wrap a moment list S_0, S_1, …; every matrix must be square of one
    /// common size and symmetric (within floating noise for T = f64).
    pub fn new(moments: Vec<Mat<T>>) -> Result<Self, MatopError> {
        let Some(first) = moments.first() else {
            return Err(MatopError::Numerical("empty moment list".into()));
        };
        let l = first.nrows();
        for (j, m) in moments.iter().enumerate() {
            if m.nrows() != l || m.ncols() != l {
                return Err(MatopError::Numerical(format!(
                    "moment {j} is {}×{} but moment 0 is {l}×{l}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let scale = m.max_abs().max(1.0);
            if m.max_abs_diff(&m.transpose()) > 1e-12 * scale {
                return Err(MatopError::Numerical(format!("moment {j} is not symmetric")));
            }
        }
        Ok(MatFunctional { l, moments })
    }

    /// Convenience wrapper for scalar (l = 1) moment sequences.
    pub fn from_scalar_moments(h: &[T]) -> Result<Self, MatopError> {
        MatFunctional::new(h.iter().map(|c| Mat::from_rows(vec![vec![c.clone()]])).collect())
    }

    /// Matrix size l.
    pub fn size(&self) -> usize {
        self.l
    }

    /// Number of stored moments (indices 0 .. count−1).
    pub fn moment_count(&self) -> usize {
        self.moments.len()
    }

    pub fn moment(&self, j: usize) -> Result<&Mat<T>, MatopError> {
        self.moments.get(j).ok_or(MatopError::MomentsExhausted {
            needed: j + 1,
            available: self.moments.len(),
        })
    }

    /// ⟨F, G⟩ = Σ_{i,j} F_i S_{i+j} G_jᵗ.
    pub fn pair(&self, f: &MatPoly<T>, g: &MatPoly<T>) -> Result<Mat<T>, MatopError> {
        self.pair_shifted(f, g, 0)
    }

    /// ⟨x^s F, G⟩ = Σ_{i,j} F_i S_{i+j+s} G_jᵗ.
    pub fn pair_shifted(
        &self,
        f: &MatPoly<T>,
        g: &MatPoly<T>,
        s: usize,
    ) -> Result<Mat<T>, MatopError> {
        let mut acc = Mat::zeros(self.l, self.l);
        if f.is_zero() || g.is_zero() {
            return Ok(acc);
        }
        let needed = (f.deg() + g.deg()) as usize + s + 1;
        if needed > self.moments.len() {
            return Err(MatopError::MomentsExhausted {
                needed,
                available: self.moments.len(),
            });
        }
        for (i, fi) in f.coeffs().iter().enumerate() {
            if fi.max_abs() == 0.0 {
                continue;
            }
            for (j, gj) in g.coeffs().iter().enumerate() {
                let m = &self.moments[i + j + s];
                acc = &acc + &(&(fi * m) * &gj.transpose());
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use numerics::rat;

    fn semicircle(count: usize) -> MatFunctional<numerics::Rat> {
        // (2/π)∫ x^j √(1−x²) dx: Catalan(t)/4^t at j = 2t, zero at odd j.
        let mut h = vec![rat(0, 1); count];
        let mut cat = rat(1, 1);
        for t in 0..(count + 1) / 2 {
            h[2 * t] = &cat / rat(4i64.pow(t as u32), 1);
            let tt = t as i64;
            cat = cat * rat(2 * (2 * tt + 1), tt + 2);
        }
        MatFunctional::from_scalar_moments(&h).unwrap()
    }

    #[test]
    fn pairing_matches_a_hand_sum() {
        let f = semicircle(5);
        // ⟨xI, xI⟩ = S_2 = 1/4 and ⟨x²I, I⟩ = S_2 as well.
        let xi = MatPoly::new(1, vec![Mat::zeros(1, 1), Mat::identity(1)]);
        let one = MatPoly::identity(1);
        assert_eq!(f.pair(&xi, &xi).unwrap()[(0, 0)], rat(1, 4));
        assert_eq!(f.pair_shifted(&one, &one, 2).unwrap()[(0, 0)], rat(1, 4));
        assert_eq!(f.pair(&xi, &one).unwrap()[(0, 0)], rat(0, 1));
    }

    #[test]
    fn asymmetric_moments_are_rejected() {
        let bad = Mat::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(
            MatFunctional::new(vec![bad]),
            Err(MatopError::Numerical(_))
        ));
    }

    #[test]
    fn missing_moments_surface_as_exhaustion() {
        let f = semicircle(3);
        let x2 = MatPoly::new(1, vec![Mat::zeros(1, 1), Mat::zeros(1, 1), Mat::identity(1)]);
        match f.pair(&x2, &x2) {
            Err(MatopError::MomentsExhausted { needed: 5, available: 3 }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }
}
