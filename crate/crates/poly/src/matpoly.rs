//! Square-matrix-valued polynomials: ascending list of coefficient matrices.

use crate::real::Poly;
use numerics::{Mat, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct MatPoly<T> {
    size: usize,
    mats: Vec<Mat<T>>, // mats[k] multiplies var^k; last entry nonzero
}

impl<T: Scalar> fmt::Debug for MatPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatPoly(size {}, degree {})", self.size, self.deg())
    }
}

impl<T: Scalar> MatPoly<T> {
    pub fn new(size: usize, mut mats: Vec<Mat<T>>) -> Self {
        assert!(size > 0);
        assert!(mats.iter().all(|m| m.nrows() == size && m.ncols() == size));
        while mats.last().map_or(false, |m| m.max_abs() == 0.0) {
            mats.pop();
        }
        MatPoly { size, mats }
    }

    pub fn zero(size: usize) -> Self {
        MatPoly { size, mats: Vec::new() }
    }

    pub fn constant(m: Mat<T>) -> Self {
        assert!(m.is_square());
        let size = m.nrows();
        MatPoly::new(size, vec![m])
    }

    pub fn identity(size: usize) -> Self {
        MatPoly::constant(Mat::identity(size))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn deg(&self) -> i64 {
        self.mats.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Mat<T> {
        self.mats
            .get(k)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.size, self.size))
    }

    pub fn coeffs(&self) -> &[Mat<T>] {
        &self.mats
    }

    pub fn eval(&self, x: &T) -> Mat<T> {
        let mut acc = Mat::zeros(self.size, self.size);
        for m in self.mats.iter().rev() {
            acc = &acc.scale(x) + m;
        }
        acc
    }

    /// Entry (i,j) as a scalar polynomial.
    pub fn entry(&self, i: usize, j: usize) -> Poly<T> {
        Poly::new(self.mats.iter().map(|m| m[(i, j)].clone()).collect())
    }

    /// Build from an entry grid of scalar polynomials.
    pub fn from_entries(entries: &[Vec<Poly<T>>]) -> Self {
        let size = entries.len();
        assert!(size > 0 && entries.iter().all(|r| r.len() == size));
        let deg = entries
            .iter()
            .flat_map(|r| r.iter().map(Poly::deg))
            .max()
            .unwrap_or(-1);
        if deg < 0 {
            return MatPoly::zero(size);
        }
        let mats = (0..=(deg as usize))
            .map(|k| Mat::from_fn(size, size, |i, j| entries[i][j].coeff(k)))
            .collect();
        MatPoly::new(size, mats)
    }

    pub fn transpose(&self) -> Self {
        MatPoly {
            size: self.size,
            mats: self.mats.iter().map(Mat::transpose).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        MatPoly::new(self.size, self.mats.iter().map(|m| m.scale(s)).collect())
    }

    /// Multiply by the scalar monomial var^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut mats = vec![Mat::zeros(self.size, self.size); k];
        mats.extend(self.mats.iter().cloned());
        MatPoly { size: self.size, mats }
    }

    pub fn derivative(&self) -> Self {
        MatPoly::new(
            self.size,
            self.mats
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, m)| m.scale(&T::from_int(k as i64)))
                .collect(),
        )
    }

    /// Determinant as a scalar polynomial (cofactor expansion over the
    /// polynomial ring — fine at the matrix sizes this library meets).
    pub fn det_poly(&self) -> Poly<T> {
        let n = self.size;
        let entries: Vec<Vec<Poly<T>>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect();
        det_rec(&entries)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> MatPoly<U> {
        MatPoly::new(self.size, self.mats.iter().map(|m| m.map(f)).collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.size, other.size);
        let deg = self.deg().max(other.deg());
        let mut worst = 0.0_f64;
        for k in 0..=(deg.max(0) as usize) {
            worst = worst.max(self.coeff(k).max_abs_diff(&other.coeff(k)));
        }
        worst
    }
}

fn det_rec<T: Scalar>(entries: &[Vec<Poly<T>>]) -> Poly<T> {
    let n = entries.len();
    if n == 1 {
        return entries[0][0].clone();
    }
    let mut acc = Poly::zero();
    for (j, top) in entries[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<T>>> = entries[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = top * &det_rec(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl<T: Scalar> Add for &MatPoly<T> {
    type Output = MatPoly<T>;
    fn add(self, rhs: &MatPoly<T>) -> MatPoly<T> {
        assert_eq!(self.size, rhs.size);
        let deg = self.deg().max(rhs.deg());
        if deg < 0 {
            return MatPoly::zero(self.size);
        }
        MatPoly::new(
            self.size,
            (0..=(deg as usize))
                .map(|k| &self.coeff(k) + &rhs.coeff(k))
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &MatPoly<T> {
    type Output = MatPoly<T>;
    fn sub(self, rhs: &MatPoly<T>) -> MatPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Neg for &MatPoly<T> {
    type Output = MatPoly<T>;
    fn neg(self) -> MatPoly<T> {
        MatPoly {
            size: self.size,
            mats: self.mats.iter().map(|m| -m).collect(),
        }
    }
}

impl<T: Scalar> Mul for &MatPoly<T> {
    type Output = MatPoly<T>;
    fn mul(self, rhs: &MatPoly<T>) -> MatPoly<T> {
        assert_eq!(self.size, rhs.size);
        if self.is_zero() || rhs.is_zero() {
            return MatPoly::zero(self.size);
        }
        let (da, db) = (self.deg() as usize, rhs.deg() as usize);
        let mut mats = vec![Mat::zeros(self.size, self.size); da + db + 1];
        for i in 0..=da {
            for j in 0..=db {
                let prod = &self.mats[i] * &rhs.mats[j];
                mats[i + j] = &mats[i + j] + &prod;
            }
        }
        MatPoly::new(self.size, mats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use numerics::{rat, Rat};

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat<Rat> {
        Mat::from_rows(vec![vec![rat(a, 1), rat(b, 1)], vec![rat(c, 1), rat(d, 1)]])
    }

    #[test]
    fn eval_and_entry_agree() {
        let p = MatPoly::new(2, vec![m2(1, 0, 0, 1), m2(0, 1, 1, 0)]);
        let at = rat(3, 1);
        let v = p.eval(&at);
        assert_eq!(v[(0, 0)], rat(1, 1));
        assert_eq!(v[(0, 1)], rat(3, 1));
        assert_eq!(p.entry(0, 1).eval(&at), rat(3, 1));
    }

    #[test]
    fn det_poly_2x2() {
        // [[1, x],[x, 1]] → det = 1 − x².
        let p = MatPoly::new(2, vec![m2(1, 0, 0, 1), m2(0, 1, 1, 0)]);
        assert_eq!(p.det_poly(), Poly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn product_matches_eval() {
        let a = MatPoly::new(2, vec![m2(1, 2, 0, 1), m2(1, 0, 1, 1)]);
        let b = MatPoly::new(2, vec![m2(0, 1, 1, 0), m2(2, 0, 0, 2)]);
        let prod = &a * &b;
        let at = rat(5, 1);
        assert_eq!(prod.eval(&at), &a.eval(&at) * &b.eval(&at));
    }

    #[test]
    fn from_entries_roundtrip() {
        let a = MatPoly::new(2, vec![m2(1, 2, 3, 4), m2(5, 6, 7, 8)]);
        let grid: Vec<Vec<Poly<Rat>>> = (0..2)
            .map(|i| (0..2).map(|j| a.entry(i, j)).collect())
            .collect();
        assert_eq!(MatPoly::from_entries(&grid), a);
    }
}
