//! The correspondence between a polynomial in w and a pair of polynomials in
//! y under y = (w + 1/w)/2:
//!
//!   q(w) = w^k ( a(y) − w · b(y) ),   a = Σ_i q_i U_{k−i},  b = Σ_i q_i U_{k−1−i},
//!
//! which is an exact identity for every q once U carries the conventions
//! U_{−1} = 0, U_{−j−2} = −U_j. The pair direction is total; the w direction
//! requires both members to have degree ≤ k so that no negative powers of w
//! survive (equivalently deg q ≤ 2k + 1).

use crate::bivar::{Bivar, VarPair};
use crate::cheb::{cheb_substitute, cheb_u};
use crate::laurent::Laurent;
use crate::real::{Poly, PolyError};
use numerics::Scalar;

/// Σ_i q_i U_{j−i}(y): the U-expansion component of q at index j.
pub fn u_component<T: Scalar>(q: &Poly<T>, j: i64) -> Poly<T> {
    let mut acc = Poly::zero();
    for (i, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &cheb_u::<T>(j - i as i64).scale(c);
        }
    }
    acc
}

/// (a, b) with q(w) = w^k (a(y) − w·b(y)); exact for every q.
pub fn w_to_pair_poly<T: Scalar>(q: &Poly<T>, k: usize) -> (Poly<T>, Poly<T>) {
    (u_component(q, k as i64), u_component(q, k as i64 - 1))
}

/// w^k (a((w+1/w)/2) − w · b((w+1/w)/2)) as a polynomial in w. Errors when
/// either member has degree above k, which is when negative powers survive.
pub fn pair_to_w_poly<T: Scalar>(
    a: &Poly<T>,
    b: &Poly<T>,
    k: usize,
) -> Result<Poly<T>, PolyError> {
    if a.deg() > k as i64 || b.deg() > k as i64 {
        return Err(PolyError::DegreeViolation {
            what: "pair members must have degree at most the pairing index",
        });
    }
    let l = &cheb_substitute(a).shift(k as i64)
        - &cheb_substitute(b).shift(k as i64 + 1);
    l.to_poly().ok_or(PolyError::DegreeViolation {
        what: "pair produced negative powers of w",
    })
}

fn var2_to_y(vars: VarPair) -> VarPair {
    match vars {
        VarPair::XW => VarPair::XY,
        VarPair::ZW => VarPair::ZY,
        other => other,
    }
}

fn var2_to_w(vars: VarPair) -> VarPair {
    match vars {
        VarPair::XY => VarPair::XW,
        VarPair::ZY => VarPair::ZW,
        other => other,
    }
}

fn var1_to_x(vars: VarPair) -> VarPair {
    match vars {
        VarPair::ZW => VarPair::XW,
        VarPair::ZY => VarPair::XY,
        other => other,
    }
}

fn row_or_zero<T: Scalar>(p: &Bivar<T>, i: usize) -> Poly<T> {
    if p.is_zero() || i as i64 > p.deg1() {
        Poly::zero()
    } else {
        p.row_poly(i)
    }
}

/// Row-wise (over the first variable) version of `w_to_pair_poly`; the second
/// variable plays the role of w.
pub fn w_to_pair<T: Scalar>(p: &Bivar<T>, k: usize) -> (Bivar<T>, Bivar<T>) {
    let out_vars = var2_to_y(p.vars());
    if p.is_zero() {
        return (Bivar::zero(out_vars), Bivar::zero(out_vars));
    }
    let n = p.deg1() as usize;
    let mut rows_a = Vec::with_capacity(n + 1);
    let mut rows_b = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (a, b) = w_to_pair_poly(&p.row_poly(i), k);
        rows_a.push(a);
        rows_b.push(b);
    }
    (
        Bivar::from_rows(out_vars, rows_a),
        Bivar::from_rows(out_vars, rows_b),
    )
}

/// Row-wise (over the first variable) version of `pair_to_w_poly`.
pub fn pair_to_w<T: Scalar>(
    a: &Bivar<T>,
    b: &Bivar<T>,
    k: usize,
) -> Result<Bivar<T>, PolyError> {
    let out_vars = var2_to_w(a.vars());
    let n = a.deg1().max(b.deg1());
    if n < 0 {
        return Ok(Bivar::zero(out_vars));
    }
    let mut rows = Vec::with_capacity(n as usize + 1);
    for i in 0..=n as usize {
        rows.push(pair_to_w_poly(&row_or_zero(a, i), &row_or_zero(b, i), k)?);
    }
    Ok(Bivar::from_rows(out_vars, rows))
}

/// Column-wise U-expansion component over the FIRST variable: with
/// p = Σ_i v^i r_i(second), returns Σ_i U_{j−i}(x) r_i(second).
pub fn u_component_var1<T: Scalar>(p: &Bivar<T>, j: i64) -> Bivar<T> {
    let out_vars = var1_to_x(p.vars());
    if p.is_zero() {
        return Bivar::zero(out_vars);
    }
    let mut acc = Bivar::zero(out_vars);
    for i in 0..=p.deg1() as usize {
        let r = p.row_poly(i);
        if r.is_zero() {
            continue;
        }
        let u = cheb_u::<T>(j - i as i64);
        if u.is_zero() {
            continue;
        }
        let term = Bivar::from_poly_var2(out_vars, &r).mul_poly_var1(&u);
        acc = &acc + &term;
    }
    acc
}

/// Row-wise U-expansion component over the SECOND variable: with
/// p = Σ rows first^i r_i(v), returns Σ first^i · (U-component of r_i at j).
pub fn u_component_var2<T: Scalar>(p: &Bivar<T>, j: i64) -> Bivar<T> {
    let out_vars = var2_to_y(p.vars());
    if p.is_zero() {
        return Bivar::zero(out_vars);
    }
    let rows = (0..=p.deg1() as usize)
        .map(|i| u_component(&p.row_poly(i), j))
        .collect();
    Bivar::from_rows(out_vars, rows)
}

/// The symmetrized resolvent component (v^{j+1} p(1/v, ·) − v^{−j−1} p(v, ·))
/// / (v − 1/v) over the first variable — equal to `u_component_var1` but kept
/// as an identity check for tests.
pub fn u_component_var1_by_division<T: Scalar>(
    p: &Bivar<T>,
    j: i64,
) -> Option<Bivar<T>> {
    let out_vars = var1_to_x(p.vars());
    if p.is_zero() {
        return Some(Bivar::zero(out_vars));
    }
    let d2 = p.deg2() as usize;
    let den = Laurent::new(-1, vec![-T::one(), T::zero(), T::one()]);
    let mut cols: Vec<Poly<T>> = Vec::with_capacity(d2 + 1);
    for c in 0..=d2 {
        let col = p.col_poly(c);
        let l = Laurent::from_poly(&col, 0);
        let num = &l.invert_var().shift(j + 1) - &l.shift(-j - 1);
        let q = num.div_exact(&den)?;
        if !q.is_symmetric() {
            return None;
        }
        cols.push(crate::cheb::symmetric_laurent_to_poly(&q)?);
    }
    Some(Bivar::from_cols(out_vars, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use numerics::{rat, Rat};
    use proptest::prelude::*;

    #[test]
    fn quadratic_symbol_pair() {
        let q = Poly::<Rat>::from_ints(&[2, 0, 1]);
        let (a, b) = w_to_pair_poly(&q, 1);
        assert_eq!(a, Poly::from_ints(&[0, 4]));
        assert_eq!(b, Poly::from_ints(&[1]));
        assert_eq!(pair_to_w_poly(&a, &b, 1).unwrap(), q);
    }

    #[test]
    fn odd_top_degree_inflates_second_member() {
        // deg q = 2k+1 makes b degree k, and the identity still closes.
        let q = Poly::<Rat>::from_ints(&[5, 1, -2, 3]);
        let (a, b) = w_to_pair_poly(&q, 1);
        assert_eq!(b.deg(), 1);
        assert_eq!(pair_to_w_poly(&a, &b, 1).unwrap(), q);
    }

    #[test]
    fn rejects_overflowing_degrees() {
        let a = Poly::<Rat>::from_ints(&[0, 0, 1]);
        let b = Poly::<Rat>::zero();
        assert!(pair_to_w_poly(&a, &b, 1).is_err());
    }

    #[test]
    fn bivariate_roundtrip() {
        let p = Bivar::<Rat>::from_ints(
            VarPair::XW,
            &[&[1, 0, -1, 2], &[0, 3, 1, 0]],
        );
        let (a, b) = w_to_pair(&p, 1);
        assert_eq!(a.vars(), VarPair::XY);
        assert_eq!(pair_to_w(&a, &b, 1).unwrap(), p);
    }

    #[test]
    fn var1_component_matches_division_form() {
        let p = Bivar::<Rat>::from_ints(
            VarPair::ZY,
            &[&[1, 2], &[0, -1], &[4, 0], &[1, 1]],
        );
        for j in -1..=4i64 {
            let direct = u_component_var1(&p, j);
            let divided = u_component_var1_by_division(&p, j).unwrap();
            assert_eq!(direct, divided, "j = {j}");
            assert_eq!(direct.vars(), VarPair::XY);
        }
    }

    proptest! {
        #[test]
        fn roundtrip_is_exact_below_degree_bound(
            k in 0usize..4,
            coeffs in proptest::collection::vec(-9i64..=9, 1..=9),
        ) {
            let take = (2 * k + 2).min(coeffs.len());
            let q = Poly::<Rat>::new(
                coeffs[..take].iter().map(|&c| rat(c, 1)).collect(),
            );
            let (a, b) = w_to_pair_poly(&q, k);
            prop_assert!(a.deg() <= k as i64);
            prop_assert!(b.deg() <= k as i64);
            prop_assert_eq!(pair_to_w_poly(&a, &b, k).unwrap(), q);
        }
    }
}
