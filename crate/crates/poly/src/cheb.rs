//! Chebyshev machinery: the substitution x = (z + 1/z)/2, its inverse on
//! symmetric Laurent polynomials, and the second-kind basis with the
//! negative-index conventions U_{−1} = 0, U_k = −U_{−k−2} for k < −1.

use crate::bivar::{Bivar, VarPair};
use crate::laurent::Laurent;
use crate::real::Poly;
use numerics::Scalar;

/// Chebyshev polynomial of the second kind, any integer index.
pub fn cheb_u<T: Scalar>(k: i64) -> Poly<T> {
    if k == -1 {
        return Poly::zero();
    }
    if k < -1 {
        return -&cheb_u::<T>(-k - 2);
    }
    let mut prev: Poly<T> = Poly::one(); // U_0
    if k == 0 {
        return prev;
    }
    let two_x = Poly::new(vec![T::zero(), T::from_int(2)]);
    let mut cur = two_x.clone(); // U_1
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind, nonnegative index.
pub fn cheb_t<T: Scalar>(k: usize) -> Poly<T> {
    let mut prev: Poly<T> = Poly::one();
    if k == 0 {
        return prev;
    }
    let x = Poly::x();
    let mut cur = x.clone();
    let two_x = Poly::new(vec![T::zero(), T::from_int(2)]);
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Σ c_j U_j for an ascending coefficient list.
pub fn u_coeffs_to_poly<T: Scalar>(coeffs: &[T]) -> Poly<T> {
    let mut acc = Poly::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &cheb_u::<T>(j as i64).scale(c);
        }
    }
    acc
}

/// Expand a polynomial in the U basis (exact; leading coefficient of U_n
/// is 2^n, so the top-down elimination stays in the same scalar mode).
pub fn poly_to_u_coeffs<T: Scalar>(p: &Poly<T>) -> Vec<T> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut rest = p.clone();
    let n = p.deg() as usize;
    let mut out = vec![T::zero(); n + 1];
    for j in (0..=n).rev() {
        if rest.deg() < j as i64 {
            continue;
        }
        // lead(U_j) = 2^j
        let mut two_pow = T::one();
        for _ in 0..j {
            two_pow = two_pow * T::from_int(2);
        }
        let c = rest.coeff(j) * two_pow.recip();
        if !c.is_zero() {
            out[j] = c.clone();
            rest = &rest - &cheb_u::<T>(j as i64).scale(&c);
        }
    }
    debug_assert!(rest.is_zero());
    out
}

/// The Laurent polynomial (z + 1/z)/2.
pub fn half_sum<T: Scalar>() -> Laurent<T> {
    Laurent::new(-1, vec![T::from_ratio(1, 2), T::zero(), T::from_ratio(1, 2)])
}

/// p((z + 1/z)/2) as a Laurent polynomial; always symmetric under z ↦ 1/z.
pub fn cheb_substitute<T: Scalar>(p: &Poly<T>) -> Laurent<T> {
    let s = half_sum::<T>();
    let mut acc = Laurent::zero();
    let mut power = Laurent::monomial(T::one(), 0);
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            power = &power * &s;
        }
        if !c.is_zero() {
            acc = &acc + &power.map(|v| v.clone() * c.clone());
        }
    }
    acc
}

/// Inverse of `cheb_substitute` on symmetric inputs:
/// c₀ + Σ_{k≥1} c_k (z^k + z^{−k}) = c₀ + Σ 2 c_k T_k(x). `None` when the
/// input is not symmetric.
pub fn symmetric_laurent_to_poly<T: Scalar>(l: &Laurent<T>) -> Option<Poly<T>> {
    if l.is_zero() {
        return Some(Poly::zero());
    }
    if !l.is_symmetric() {
        return None;
    }
    let hi = l.max_exp() as usize;
    let mut acc = Poly::constant(l.coeff(0));
    for k in 1..=hi {
        let c = l.coeff(k as i64);
        if !c.is_zero() {
            acc = &acc + &cheb_t::<T>(k).scale(&(c * T::from_int(2)));
        }
    }
    Some(acc)
}

/// z^{deg₁ p} · p((z+1/z)/2, ·): the substitution in the first variable of
/// a bivariate polynomial, cleared to an honest polynomial. Returns the grid
/// in the requested circle-variable pair.
pub fn cheb_pullback_var1<T: Scalar>(p: &Bivar<T>, target: VarPair) -> Bivar<T> {
    if p.is_zero() {
        return Bivar::zero(target);
    }
    let d1 = p.deg1() as usize;
    let d2 = p.deg2() as usize;
    let s = half_sum::<T>();
    let mut rows = vec![vec![T::zero(); d2 + 1]; 2 * d1 + 1];
    let mut power = Laurent::monomial(T::one(), 0);
    for i in 0..=d1 {
        if i > 0 {
            power = &power * &s;
        }
        // z^{d1}·s^i occupies exponents d1−i … d1+i.
        for (e, c) in power.terms() {
            let zrow = (e + d1 as i64) as usize;
            for j in 0..=d2 {
                let add = c.clone() * p.coeff(i, j);
                if !add.is_zero() {
                    rows[zrow][j] = rows[zrow][j].clone() + add;
                }
            }
        }
    }
    Bivar::new(target, rows)
}

/// Pull a univariate polynomial q(x) back to z^{deg q}·q((z+1/z)/2).
pub fn cheb_pullback_poly<T: Scalar>(q: &Poly<T>) -> Poly<T> {
    let d = q.deg().max(0);
    cheb_substitute(q)
        .shift(d)
        .to_poly()
        .expect("shift clears all negative exponents")
}
