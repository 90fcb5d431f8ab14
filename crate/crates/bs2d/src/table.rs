//! Mixed moment tables and the block functionals they induce.

use crate::Bs2dError;
use matop::{matrix_gram_schmidt, MatFunctional, MatOPFamily};
use numerics::{ldlt, Mat, Scalar};
use poly::{Bivar, Poly};

/// A rectangular table of mixed moments of a linear functional on
/// polynomials in two variables:
///
/// ```text
///   h[k][l] = L(x^k y^l),   0 ≤ k ≤ 2n,  0 ≤ l ≤ 2m.
/// ```
///
/// The table is the complete data of `L` on the truncated space of
/// bidegree at most `(2n, 2m)`; everything else in this crate is computed
/// from it.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<T: Scalar> {
    n: usize,
    m: usize,
    h: Vec<Vec<T>>,
}

impl<T: Scalar> MomentTable<T> {
    /// Wrap a `(2n+1) × (2m+1)` grid of moments.  Panics if the grid is
    /// ragged or has even side lengths.
    pub fn new(h: Vec<Vec<T>>) -> Self {
        assert!(!h.is_empty() && h.len() % 2 == 1, "row count must be odd");
        let cols = h[0].len();
        assert!(cols % 2 == 1, "column count must be odd");
        assert!(h.iter().all(|r| r.len() == cols), "ragged moment grid");
        MomentTable { n: (h.len() - 1) / 2, m: (cols - 1) / 2, h }
    }

    /// Degree bound in the first variable: rows run over `x^0 … x^{2n}`.
    pub fn x_level(&self) -> usize {
        self.n
    }

    /// Degree bound in the second variable: columns run over `y^0 … y^{2m}`.
    pub fn y_level(&self) -> usize {
        self.m
    }

    /// The moment `L(x^k y^l)`.
    pub fn get(&self, k: usize, l: usize) -> &T {
        &self.h[k][l]
    }

    /// The table of the functional with the two variables swapped.
    pub fn transpose(&self) -> Self {
        let rows = (0..=2 * self.m)
            .map(|l| (0..=2 * self.n).map(|k| self.h[k][l].clone()).collect())
            .collect();
        MomentTable { n: self.m, m: self.n, h: rows }
    }

    /// Float copy of the table.
    pub fn to_f64(&self) -> MomentTable<f64> {
        MomentTable {
            n: self.n,
            m: self.m,
            h: self
                .h
                .iter()
                .map(|r| r.iter().map(|c| c.to_f64()).collect())
                .collect(),
        }
    }

    /// Apply the functional to a product of two bivariate polynomials:
    /// `L(f · g)`.  Fails if the product degree exceeds the table.
    pub fn pair(&self, f: &Bivar<T>, g: &Bivar<T>) -> Result<T, Bs2dError> {
        let prod = f * g;
        self.apply(&prod)
    }

    /// Apply the functional to a bivariate polynomial.
    pub fn apply(&self, f: &Bivar<T>) -> Result<T, Bs2dError> {
        if f.is_zero() {
            return Ok(T::zero());
        }
        let d1 = f.deg1() as usize;
        let d2 = f.deg2() as usize;
        if d1 > 2 * self.n || d2 > 2 * self.m {
            return Err(Bs2dError::MomentsExhausted {
                needed: d1.max(d2),
                available: if d1 > 2 * self.n { 2 * self.n } else { 2 * self.m },
            });
        }
        let mut acc = T::zero();
        for k in 0..=d1 {
            for l in 0..=d2 {
                acc = acc + f.coeff(k, l) * self.h[k][l].clone();
            }
        }
        Ok(acc)
    }

    /// Gram matrix of the monomials `x^i y^a`, `i ≤ n`, `a ≤ m_block`, in
    /// graded order — the full moment matrix whose positivity makes the
    /// functional an inner product on the truncated space.
    pub fn gram(&self, m_block: usize) -> Mat<T> {
        let cols = m_block + 1;
        let dim = (self.n + 1) * cols;
        Mat::from_fn(dim, dim, |r, c| {
            let (i, a) = (r / cols, r % cols);
            let (j, b) = (c / cols, c % cols);
            self.h[i + j][a + b].clone()
        })
    }
}

/// Build the matrix-moment functional of block size `m_block + 1` from a
/// moment table: the `j`-th matrix moment is the Hankel slice
///
/// ```text
///   S_j[a][b] = h[j][a + b],   0 ≤ a, b ≤ m_block.
/// ```
///
/// All `2n + 1` rows of the table are used, which is exactly enough moment
/// data for a monic family up to degree `n`.  Positive definiteness of the
/// full moment matrix (monomials `x^i y^a`, `i ≤ n`, `a ≤ m_block`) is
/// verified; failure reports the first bad level.
pub fn functional_to_matrix<T: Scalar>(
    table: &MomentTable<T>,
    m_block: usize,
) -> Result<MatFunctional<T>, Bs2dError> {
    if m_block > table.m {
        return Err(Bs2dError::MomentsExhausted {
            needed: 2 * m_block,
            available: 2 * table.m,
        });
    }
    let gram = table.gram(m_block);
    if let Err(e) = ldlt(&gram) {
        let degree = match e {
            numerics::CholeskyError::NotPositiveDefinite { pivot } => pivot / (m_block + 1),
            _ => 0,
        };
        return Err(Bs2dError::NotPositive { degree });
    }
    let size = m_block + 1;
    let moments = (0..=2 * table.n)
        .map(|j| Mat::from_fn(size, size, |a, b| table.h[j][a + b].clone()))
        .collect();
    Ok(MatFunctional::new(moments)?)
}

/// Which variable plays the role of the outer (matrix-degree) variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Outer variable `x`: vectors collect `y`-powers.
    XSide,
    /// Outer variable `y`: vectors collect `x`-powers (transposed table).
    YSide,
}

/// An orthonormal family of vector polynomials
///
/// ```text
///   P_k(x, y) = P_k(x) · [β₀(y), …, β_l(y)]ᵗ
/// ```
///
/// obtained by matrix Gram-Schmidt on the block functional of a moment
/// table, together with its three-term recurrence data.  The recurrence
/// reads `x P_k = A_{k+1} P_{k+1} + B_k P_k + A_kᵗ P_{k−1}`.
#[derive(Debug, Clone)]
pub struct VectorOPFamily {
    pub orientation: Orientation,
    /// The inner-variable basis `β_0, …, β_l` (monomials by default).
    pub basis: Vec<Poly<f64>>,
    pub family: MatOPFamily<f64>,
}

impl VectorOPFamily {
    /// Orthonormalize up to outer degree `levels` with inner block size
    /// `m_block + 1`.  `basis` defaults to the monomial basis; a custom
    /// basis must be a degree-graded family (deg β_i = i) and transforms
    /// the block moments by the congruence with its coefficient matrix.
    pub fn from_table(
        table: &MomentTable<f64>,
        m_block: usize,
        levels: usize,
        orientation: Orientation,
        basis: Option<Vec<Poly<f64>>>,
    ) -> Result<Self, Bs2dError> {
        let oriented;
        let t = match orientation {
            Orientation::XSide => table,
            Orientation::YSide => {
                oriented = table.transpose();
                &oriented
            }
        };
        let functional = functional_to_matrix(t, m_block)?;
        let functional = match &basis {
            None => functional,
            Some(betas) => {
                assert_eq!(betas.len(), m_block + 1, "basis size must match block");
                let c = basis_matrix(betas);
                let mut moments = Vec::with_capacity(functional.moment_count());
                for j in 0..functional.moment_count() {
                    let s = functional.moment(j)?;
                    moments.push(&(&c * s) * &c.transpose());
                }
                MatFunctional::new(moments)?
            }
        };
        let family = matrix_gram_schmidt(&functional, levels)?;
        let basis = basis.unwrap_or_else(|| {
            (0..=m_block).map(|i| Poly::monomial(f64::one(), i)).collect()
        });
        Ok(VectorOPFamily { orientation, basis, family })
    }

    /// Evaluate the degree-`k` vector polynomial at a point.  The inner
    /// variable is `y` for the x-side orientation and `x` for the y-side.
    pub fn vector_eval(&self, k: usize, outer: f64, inner: f64) -> Vec<f64> {
        let mat = self.family.p[k].eval(&outer);
        let betas: Vec<f64> = self.basis.iter().map(|b| b.eval(&inner)).collect();
        (0..mat.nrows())
            .map(|i| (0..mat.ncols()).map(|j| mat[(i, j)] * betas[j]).sum())
            .collect()
    }
}

/// Coefficient matrix of a degree-graded basis: row `i` holds the monomial
/// coefficients of `β_i`.
fn basis_matrix<T: Scalar>(betas: &[Poly<T>]) -> Mat<T> {
    let size = betas.len();
    Mat::from_fn(size, size, |i, j| betas[i].coeff(j))
}

/// Congruence-transform the block moments of a table by a basis matrix
/// (exact): `S'_j = C S_j Cᵗ`.  Used for basis-independence checks.
pub(crate) fn transformed_functional<T: Scalar>(
    table: &MomentTable<T>,
    c: &Mat<T>,
) -> Result<MatFunctional<T>, Bs2dError> {
    let m_block = c.nrows() - 1;
    let base = functional_to_matrix(table, m_block)?;
    let mut moments = Vec::with_capacity(base.moment_count());
    for j in 0..base.moment_count() {
        let s = base.moment(j)?;
        moments.push(&(c * s) * &c.transpose());
    }
    Ok(MatFunctional::new(moments)?)
}
