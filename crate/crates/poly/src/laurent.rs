//! Laurent polynomials: an ascending coefficient run starting at a signed
//! minimum exponent. Zero is the empty run.

use crate::real::Poly;
use numerics::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct Laurent<T> {
    lo: i64,
    coeffs: Vec<T>, // coeffs[k] multiplies var^(lo + k); first/last nonzero
}

impl<T: Scalar> fmt::Debug for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{}·z^{}", c.to_repr(), self.lo + k as i64))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<T: Scalar> Laurent<T> {
    pub fn new(lo: i64, coeffs: Vec<T>) -> Self {
        let mut l = Laurent { lo, coeffs };
        l.normalize();
        l
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
        let strip = self
            .coeffs
            .iter()
            .take_while(|c| c.is_zero())
            .count();
        if strip > 0 {
            self.coeffs.drain(0..strip);
            self.lo += strip as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn zero() -> Self {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn from_poly(p: &Poly<T>, shift: i64) -> Self {
        Laurent::new(shift, p.coeffs().to_vec())
    }

    pub fn monomial(c: T, e: i64) -> Self {
        Laurent::new(e, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        assert!(!self.is_zero(), "zero Laurent polynomial has no exponents");
        self.lo
    }

    pub fn max_exp(&self) -> i64 {
        assert!(!self.is_zero(), "zero Laurent polynomial has no exponents");
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> T {
        if self.is_zero() || e < self.lo || e > self.max_exp() {
            T::zero()
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    /// Exponent-shifted view: self · var^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    /// Substitute var ↦ 1/var.
    pub fn invert_var(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        let hi = self.max_exp();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent::new(-hi, coeffs)
    }

    /// Palindrome test: invariant under var ↦ 1/var.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_var()
    }

    /// View as an ordinary polynomial when no negative exponents remain.
    pub fn to_poly(&self) -> Option<Poly<T>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.lo < 0 {
            return None;
        }
        let mut v = vec![T::zero(); self.lo as usize];
        v.extend(self.coeffs.iter().cloned());
        Some(Poly::new(v))
    }

    /// Exact Laurent division; `None` when not divisible.
    pub fn div_exact(&self, d: &Laurent<T>) -> Option<Laurent<T>> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let num = Poly::new(self.coeffs.clone());
        let den = Poly::new(d.coeffs.clone());
        let q = num.exact_div(&den)?;
        Some(Laurent::new(self.lo - d.lo, q.coeffs().to_vec()))
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64() * z.powi((self.lo + k as i64) as i32))
            .sum()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Laurent<U> {
        Laurent::new(self.lo, self.coeffs.iter().map(f).collect())
    }

    /// Iterate (exponent, coefficient) over stored entries.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        let lo = self.lo;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (lo + k as i64, c))
    }
}

impl<T: Scalar> Add for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: &Laurent<T>) -> Laurent<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.max_exp().max(rhs.max_exp());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        Laurent::new(lo, coeffs)
    }
}

impl<T: Scalar> Sub for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: &Laurent<T>) -> Laurent<T> {
        &self.clone() + &(-rhs)
    }
}

impl<T: Scalar> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: &Laurent<T>) -> Laurent<T> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let a = Poly::new(self.coeffs.clone());
        let b = Poly::new(rhs.coeffs.clone());
        let p = &a * &b;
        Laurent::new(self.lo + rhs.lo, p.coeffs().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use numerics::{rat, Rat};

    #[test]
    fn normalization_strips_both_ends() {
        let l = Laurent::new(-2, vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(l.min_exp(), -1);
        assert_eq!(l.max_exp(), -1);
        assert_eq!(l.coeff(-1), rat(1, 1));
    }

    #[test]
    fn inversion_and_symmetry() {
        // z + 1/z is symmetric, z + 2/z is not.
        let sym = Laurent::new(-1, vec![rat(1, 1), rat(0, 1), rat(1, 1)]);
        assert!(sym.is_symmetric());
        let asym = Laurent::new(-1, vec![rat(2, 1), rat(0, 1), rat(1, 1)]);
        assert!(!asym.is_symmetric());
        assert_eq!(asym.invert_var().coeff(1), rat(2, 1));
    }

    #[test]
    fn multiplication_tracks_exponents() {
        let a = Laurent::monomial(rat(2, 1), -3);
        let b = Laurent::monomial(rat(3, 1), 5);
        let p = &a * &b;
        assert_eq!(p.coeff(2), rat(6, 1));
    }

    #[test]
    fn exact_division() {
        // (z − 1/z) divides z² − 1/z² with quotient z + 1/z.
        let n = Laurent::new(-2, vec![rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
        let d = Laurent::new(-1, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let q = n.div_exact(&d).unwrap();
        assert_eq!(q, Laurent::new(-1, vec![rat(1, 1), rat(0, 1), rat(1, 1)]));
        let bad = Laurent::new(0, vec![rat(1, 1), rat(1, 1)]);
        assert!(bad.div_exact(&d).is_none());
    }

    #[test]
    fn poly_view() {
        let l = Laurent::<Rat>::new(2, vec![rat(5, 1)]);
        assert_eq!(l.to_poly().unwrap(), Poly::monomial(rat(5, 1), 2));
        let neg = Laurent::<Rat>::new(-1, vec![rat(5, 1)]);
        assert!(neg.to_poly().is_none());
    }
}
