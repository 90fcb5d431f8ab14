//! Arithmetic abstraction shared by every pipeline: exact rationals for
//! reconstruction-grade computations, `f64` for quadrature-grade ones.
//!
//! The two modes never mix inside one value; generic code picks the mode
//! through the type parameter and the `EXACT` flag only gates algorithmic
//! choices (pivoting strategy, certification paths).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar used throughout the reconstruction paths.
pub type Rat = BigRational;

/// A field scalar the library can compute with.
///
/// Implemented by [`Rat`] (exact) and `f64` (floating point). The operator
/// bounds are on owned values; all containers clone freely — every object in
/// this library is desk-scale.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact (no rounding anywhere).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Lift a float bit-for-bit (exact dyadic in rational mode; identity for f64).
    fn from_f64_exact(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Sign as −1, 0, +1 (exact in rational mode).
    fn signum_i32(&self) -> i32;
    /// Magnitude as f64 — used only to *choose* pivots, never for values.
    fn mag(&self) -> f64;
    fn recip(&self) -> Self;
    /// Square root when representable in the same mode: exact square test for
    /// rationals, any nonnegative value for floats.
    fn try_sqrt(&self) -> Option<Self>;
    /// Canonical text form: `"num/den"` (or plain integer) for rationals,
    /// shortest round-trip decimal for floats.
    fn to_repr(&self) -> String;
    /// Parse the canonical text form; rationals additionally accept decimal
    /// strings, read as exact decimal fractions.
    fn from_repr(s: &str) -> Option<Self>;
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64_exact(x: f64) -> Self {
        BigRational::from_float(x).expect("non-finite float cannot be lifted to a rational")
    }
    fn to_f64(&self) -> f64 {
        // Falls back to a quotient of approximations only when the parts
        // overflow f64 individually; exactness of the source is unaffected.
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let n = ToPrimitive::to_f64(self.numer()).unwrap_or(f64::MAX);
            let d = ToPrimitive::to_f64(self.denom()).unwrap_or(f64::MAX);
            n / d
        })
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum_i32(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn mag(&self) -> f64 {
        Scalar::to_f64(&self.abs())
    }
    fn recip(&self) -> Self {
        assert!(!Zero::is_zero(self), "reciprocal of zero");
        BigRational::new(self.denom().clone(), self.numer().clone())
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
    fn to_repr(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn from_repr(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num: BigInt = n.trim().parse().ok()?;
            let den: BigInt = d.trim().parse().ok()?;
            if Zero::is_zero(&den) {
                return None;
            }
            return Some(BigRational::new(num, den));
        }
        if let Ok(n) = s.parse::<BigInt>() {
            return Some(BigRational::from_integer(n));
        }
        // Exact decimal fraction, e.g. "-0.25" → -1/4, "1e-3" → 1/1000.
        parse_decimal_rational(s)
    }
}

fn parse_decimal_rational(s: &str) -> Option<Rat> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.is_empty() && int_part.is_empty() {
        return None;
    }
    let negative = int_part.starts_with('-');
    let digits: String = format!("{}{}", int_part.trim_start_matches(['+', '-']), frac_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(num);
    if scale > 0 {
        value /= BigRational::from_integer(ten.pow(scale as u32));
    } else if scale < 0 {
        value *= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    if negative {
        value = -value;
    }
    Some(value)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64_exact(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn signum_i32(&self) -> i32 {
        if *self == 0.0 {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn mag(&self) -> f64 {
        self.abs()
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
    fn try_sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
    fn to_repr(&self) -> String {
        format!("{self}")
    }
    fn from_repr(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num: f64 = n.trim().parse().ok()?;
            let den: f64 = d.trim().parse().ok()?;
            return Some(num / den);
        }
        s.parse().ok()
    }
}

/// Convenience constructor for rational literals in tests and fixtures.
pub fn rat(num: i64, den: i64) -> Rat {
    <Rat as Scalar>::from_ratio(num, den)
}

/// Convert a slice of exact scalars to f64 (used where a float pipeline
/// consumes exact results).
pub fn to_f64_vec<T: Scalar>(xs: &[T]) -> Vec<f64> {
    xs.iter().map(Scalar::to_f64).collect()
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// found by walking the continued-fraction convergents. Returns `None` for
/// non-finite input. The result is a candidate only — callers that need
/// exactness must verify it downstream (e.g. by substituting back into an
/// exact identity).
pub fn rational_snap(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() || max_den < 1 {
        return None;
    }
    // Convergents p_k/q_k of the continued fraction of x.
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::from(1), BigInt::from(0), BigInt::from(0), BigInt::from(1));
    let mut r = x;
    let bound = BigInt::from(max_den);
    for _ in 0..64 {
        let a = r.floor();
        if !a.is_finite() {
            break;
        }
        let ab = BigInt::from(a as i128);
        let p2 = &ab * &p0 + &p1;
        let q2 = &ab * &q0 + &q1;
        if q2 > bound {
            // The previous convergent is the best within the bound; improve
            // it with the largest admissible semiconvergent step.
            let rem = (&bound - &q1) / &q0;
            if rem > BigInt::from(0) {
                let ps = &rem * &p0 + &p1;
                let qs = &rem * &q0 + &q1;
                let semi = Rat::new(ps, qs);
                let best = Rat::new(p0, q0);
                let err_semi = (Scalar::to_f64(&semi) - x).abs();
                let err_best = (Scalar::to_f64(&best) - x).abs();
                return Some(if err_semi < err_best { semi } else { best });
            }
            return Some(Rat::new(p0, q0));
        }
        p1 = std::mem::replace(&mut p0, p2);
        q1 = std::mem::replace(&mut q0, q2);
        let frac = r - a;
        if frac.abs() < 1e-18 * r.abs().max(1.0) {
            break;
        }
        r = 1.0 / frac;
    }
    Some(Rat::new(p0, q0))
}
