//! Cholesky factorization, generic over the scalar mode.

use crate::mat::Mat;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum CholeskyError {
    /// A pivot came out ≤ 0: the input is not positive definite. Carries the
    /// failing pivot index so functional-positivity callers can report the
    /// offending degree.
    NotPositiveDefinite { pivot: usize },
    /// Exact mode only: a pivot is positive but not a rational square, so the
    /// factor does not exist over ℚ. Callers either switch to floats or use
    /// the square-root-free (monic) orthogonalization instead.
    IrrationalPivot { pivot: usize },
    /// Input is not symmetric.
    NotSymmetric,
}

impl fmt::Display for CholeskyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CholeskyError::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot} ≤ 0)")
            }
            CholeskyError::IrrationalPivot { pivot } => write!(
                f,
                "pivot {pivot} has no exact square root; factor is irrational"
            ),
            CholeskyError::NotSymmetric => write!(f, "matrix is not symmetric"),
        }
    }
}

impl std::error::Error for CholeskyError {}

/// Lower-triangular L with positive diagonal and L·Lᵗ = M.
///
/// Works for both scalar modes; in exact mode the factor exists only when
/// every pivot is a perfect rational square, otherwise `IrrationalPivot`.
pub fn cholesky<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>, CholeskyError> {
    if !m.is_symmetric() {
        return Err(CholeskyError::NotSymmetric);
    }
    let n = m.nrows();
    let mut l = Mat::<T>::zeros(n, n);
    for j in 0..n {
        let mut pivot = m[(j, j)].clone();
        for k in 0..j {
            pivot = pivot - l[(j, k)].clone() * l[(j, k)].clone();
        }
        if pivot.signum_i32() <= 0 {
            return Err(CholeskyError::NotPositiveDefinite { pivot: j });
        }
        let root = pivot
            .try_sqrt()
            .ok_or(CholeskyError::IrrationalPivot { pivot: j })?;
        l[(j, j)] = root.clone();
        let inv = root.recip();
        for i in (j + 1)..n {
            let mut acc = m[(i, j)].clone();
            for k in 0..j {
                acc = acc - l[(i, k)].clone() * l[(j, k)].clone();
            }
            l[(i, j)] = acc * inv.clone();
        }
    }
    Ok(l)
}

/// Square-root-free symmetric factorization M = L·D·Lᵗ with unit-diagonal L.
/// This is the exact-mode workhorse: positive definiteness is certified by
/// the signs of D without ever leaving ℚ.
pub fn ldlt<T: Scalar>(m: &Mat<T>) -> Result<(Mat<T>, Vec<T>), CholeskyError> {
    if !m.is_symmetric() {
        return Err(CholeskyError::NotSymmetric);
    }
    let n = m.nrows();
    let mut l = Mat::<T>::identity(n);
    let mut d = vec![T::zero(); n];
    for j in 0..n {
        let mut dj = m[(j, j)].clone();
        for k in 0..j {
            dj = dj - l[(j, k)].clone() * l[(j, k)].clone() * d[k].clone();
        }
        if dj.signum_i32() <= 0 {
            return Err(CholeskyError::NotPositiveDefinite { pivot: j });
        }
        d[j] = dj.clone();
        let inv = dj.recip();
        for i in (j + 1)..n {
            let mut acc = m[(i, j)].clone();
            for k in 0..j {
                acc = acc - l[(i, k)].clone() * l[(j, k)].clone() * d[k].clone();
            }
            l[(i, j)] = acc * inv.clone();
        }
    }
    Ok((l, d))
}

/// True iff the symmetric matrix is positive definite, decided exactly in
/// rational mode (via LDLᵗ pivots) and numerically for floats.
pub fn is_positive_definite<T: Scalar>(m: &Mat<T>) -> bool {
    ldlt(m).is_ok()
}
