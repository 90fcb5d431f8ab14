//! Dense matrices over a [`Scalar`], with the linear-algebra kernel the rest
//! of the library leans on: Gaussian elimination (solve / inverse / det) and
//! an exact reduced-row-echelon nullspace for rational mode.

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub enum MatError {
    /// Dimensions of the operands do not line up.
    Shape {
        want: (usize, usize),
        got: (usize, usize),
    },
    /// Elimination hit a structurally singular pivot.
    Singular,
    /// A matrix declared symmetric fails the entrywise check.
    NotSymmetric,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::Shape { want, got } => {
                write!(f, "dimension mismatch: want {want:?}, got {got:?}")
            }
            MatError::Singular => write!(f, "matrix is singular"),
            MatError::NotSymmetric => write!(f, "matrix is not symmetric"),
        }
    }
}

impl std::error::Error for MatError {}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        Mat {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * s.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise max |a-b| as f64 (test/report helper; values stay exact).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut worst = 0.0_f64;
        for (a, b) in self.data.iter().zip(&other.data) {
            worst = worst.max((a.clone() - b.clone()).mag());
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::mag).fold(0.0, f64::max)
    }

    /// Map entries to another scalar type (e.g. exact → f64 for display).
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Solve self · X = rhs by Gaussian elimination with partial pivoting
    /// (first-nonzero pivoting is enough in exact mode but magnitude
    /// selection is harmless there and essential for floats).
    pub fn solve(&self, rhs: &Mat<T>) -> Result<Mat<T>, MatError> {
        if !self.is_square() {
            return Err(MatError::Shape {
                want: (self.rows, self.rows),
                got: (self.rows, self.cols),
            });
        }
        if rhs.rows != self.rows {
            return Err(MatError::Shape {
                want: (self.rows, rhs.cols),
                got: (rhs.rows, rhs.cols),
            });
        }
        let n = self.rows;
        let k = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let mut best = col;
            let mut best_mag = a[(col, col)].mag();
            for r in (col + 1)..n {
                let m = a[(r, col)].mag();
                if m > best_mag {
                    best = r;
                    best_mag = m;
                }
            }
            if a[(best, col)].is_zero() {
                return Err(MatError::Singular);
            }
            if best != col {
                a.swap_rows(best, col);
                b.swap_rows(best, col);
            }
            let inv = a[(col, col)].clone().recip();
            for r in (col + 1)..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() * inv.clone();
                for c in col..n {
                    let v = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                    a[(r, c)] = v;
                }
                for c in 0..k {
                    let v = b[(r, c)].clone() - factor.clone() * b[(col, c)].clone();
                    b[(r, c)] = v;
                }
            }
        }
        // Back substitution.
        let mut x: Mat<T> = Mat::zeros(n, k);
        for col in 0..k {
            for i in (0..n).rev() {
                let mut acc = b[(i, col)].clone();
                for j in (i + 1)..n {
                    acc = acc - a[(i, j)].clone() * x[(j, col)].clone();
                }
                x[(i, col)] = acc * a[(i, i)].clone().recip();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat<T>, MatError> {
        self.solve(&Mat::identity(self.rows))
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let mut best = col;
            let mut best_mag = a[(col, col)].mag();
            for r in (col + 1)..n {
                let m = a[(r, col)].mag();
                if m > best_mag {
                    best = r;
                    best_mag = m;
                }
            }
            if a[(best, col)].is_zero() {
                return T::zero();
            }
            if best != col {
                a.swap_rows(best, col);
                det = -det;
            }
            det = det * a[(col, col)].clone();
            let inv = a[(col, col)].clone().recip();
            for r in (col + 1)..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() * inv.clone();
                for c in col..n {
                    let v = a[(r, c)].clone() - factor.clone() * a[(col, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Exact nullspace basis via reduced row echelon form. Intended for
    /// rational mode (float callers should use the SVD-based routine).
    /// Returns one column vector per free variable; empty when trivial.
    pub fn kernel_exact(&self) -> Vec<Vec<T>> {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..n {
            let mut pivot_row = None;
            for i in r..m {
                if !a[(i, c)].is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(p) = pivot_row else { continue };
            a.swap_rows(p, r);
            let inv = a[(r, c)].clone().recip();
            for j in c..n {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..m {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..n {
                        let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                        a[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m {
                break;
            }
        }
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..n {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); n];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }
}

impl<T: Scalar> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }
}

impl<T: Scalar> Neg for &Mat<T> {
    type Output = Mat<T>;
    fn neg(self) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(
            self.cols, rhs.rows,
            "product shape mismatch: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }
}
