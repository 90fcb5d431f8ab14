//! The pair-product invariant Δ of a symbol q of degree m:
//!
//!   Δ = q_m^{m−1} · ∏_{k<l} (w_k w_l − 1)
//!
//! over the roots w_1, …, w_m of q. It is a polynomial in the coefficients
//! of q and is computed here without any root extraction: the monic
//! polynomial with roots {w_k w_l}_{k,l} is a resultant in disguise, the
//! diagonal sub-product comes from q(s)q(−s), and their quotient is the
//! square of the off-diagonal product.

use crate::Bs1dError;
use numerics::{Rat, Scalar};
use poly::{interpolate, monic_sqrt, resultant, Poly};

/// ∏_{k,l over all ordered pairs}(t − w_k w_l), monic of degree m², by
/// interpolation of t ↦ Res_w(q(w), Σ_j q_j t^j w^{m−j}) / q_m^{2m}.
fn all_pairs_poly(q: &Poly<Rat>) -> Poly<Rat> {
    let m = q.deg() as usize;
    let lead = q.lead();
    let norm = lead.clone() * lead;
    let mut norm_pow = Rat::one();
    for _ in 0..m {
        norm_pow = norm_pow * norm.clone();
    }
    let points: Vec<(Rat, Rat)> = (0..=(m * m) as i64)
        .map(|t| {
            let tv = Rat::from_int(t);
            let mut pow = Rat::one();
            let mut hcoeffs = vec![Rat::zero(); m + 1];
            for j in 0..=m {
                hcoeffs[m - j] = q.coeff(j) * pow.clone();
                pow = pow * tv.clone();
            }
            let h = Poly::new(hcoeffs);
            (tv, resultant(q, &h) * norm_pow.clone().recip())
        })
        .collect();
    interpolate(&points)
}

/// ∏_k (t − w_k²), monic of degree m, as the even part of q(s)q(−s) scaled
/// by (−1)^m / q_m².
fn diagonal_poly(q: &Poly<Rat>) -> Poly<Rat> {
    let m = q.deg() as usize;
    let prod = q * &q.flip_sign();
    let mut even = Vec::with_capacity(m + 1);
    for j in 0..=m {
        assert!(prod.coeff(2 * j + 1).is_zero(), "q(s)q(−s) must be even");
        even.push(prod.coeff(2 * j));
    }
    let lead = q.lead();
    let mut scale = (lead.clone() * lead).recip();
    if m % 2 == 1 {
        scale = -scale;
    }
    Poly::new(even).scale(&scale)
}

/// Exact Δ for a symbol of any degree; degree ≤ 1 gives the empty product 1.
pub fn delta_m(q: &Poly<Rat>) -> Result<Rat, Bs1dError> {
    let m = q.deg();
    if m < 0 {
        return Err(Bs1dError::NotStable {
            reason: "zero polynomial has no pair-product invariant",
        });
    }
    if m <= 1 {
        return Ok(Rat::one());
    }
    let m = m as usize;
    let w = all_pairs_poly(q);
    let v = diagonal_poly(q);
    let u = w
        .exact_div(&v)
        .expect("diagonal pairs divide the full pair product");
    let s = monic_sqrt(&u).expect("off-diagonal pair product is a square");
    let mut lead_pow = Rat::one();
    for _ in 0..m - 1 {
        lead_pow = lead_pow * q.lead();
    }
    let sign = if (m * (m - 1) / 2) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    Ok(lead_pow * sign * s.eval(&Rat::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use numerics::rat;

    fn delta(coeffs: &[(i64, i64)]) -> Rat {
        let q = Poly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect());
        delta_m(&q).unwrap()
    }

    #[test]
    fn degree_two_closed_form() {
        // Δ₂ = q₀ − q₂ (single pair w₁w₂ = q₀/q₂ times q₂).
        for (q0, q1, q2) in [(2i64, 0i64, 1i64), (5, 1, 2), (7, -3, 3)] {
            let got = delta(&[(q0, 1), (q1, 1), (q2, 1)]);
            assert_eq!(got, rat(q0 - q2, 1), "q = ({q0},{q1},{q2})");
        }
    }

    #[test]
    fn low_degrees_are_trivial() {
        assert_eq!(delta(&[(3, 1)]), rat(1, 1));
        assert_eq!(delta(&[(2, 1), (1, 1)]), rat(1, 1));
    }

    #[test]
    fn degree_three_against_roots() {
        // q = (w − 2)(w − 3)(w − 5) ⟹ Δ = ∏_{k<l}(w_k w_l − 1) = 5·9·14.
        let q = Poly::new(vec![rat(-30, 1), rat(31, 1), rat(-10, 1), rat(1, 1)]);
        assert_eq!(delta_m(&q).unwrap(), rat(5 * 9 * 14, 1));
        // Scaling by c multiplies Δ by c^{m−1}.
        assert_eq!(delta_m(&q.scale(&rat(3, 1))).unwrap(), rat(9 * 5 * 9 * 14, 1));
    }

    #[test]
    fn quartic_closed_form() {
        // Eleven-term coefficient polynomial for degree four.
        let quartic = |q: &[Rat]| -> Rat {
            let (q0, q1, q2, q3, q4) =
                (q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone(), q[4].clone());
            q0.clone() * q0.clone() * q0.clone() - q0.clone() * q0.clone() * q2.clone()
                + q0.clone() * q1.clone() * q3.clone()
                - q0.clone() * q3.clone() * q3.clone()
                - q0.clone() * q0.clone() * q4.clone()
                - q1.clone() * q1.clone() * q4.clone()
                + rat(2, 1) * q0.clone() * q2.clone() * q4.clone()
                + q1.clone() * q3.clone() * q4.clone()
                - q0.clone() * q4.clone() * q4.clone()
                - q2.clone() * q4.clone() * q4.clone()
                + q4.clone() * q4.clone() * q4
        };
        for coeffs in [
            [rat(2, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
            [rat(3, 1), rat(1, 2), rat(-1, 3), rat(2, 5), rat(1, 1)],
            [rat(5, 1), rat(-2, 1), rat(1, 1), rat(1, 4), rat(-3, 2)],
        ] {
            let q = Poly::new(coeffs.to_vec());
            assert_eq!(delta_m(&q).unwrap(), quartic(&coeffs), "q = {coeffs:?}");
        }
    }

    #[test]
    fn repeated_roots_are_handled() {
        // q = (w − 2)² ⟹ Δ = q₀ − q₂ = 3.
        let q = Poly::new(vec![rat(4, 1), rat(-4, 1), rat(1, 1)]);
        assert_eq!(delta_m(&q).unwrap(), rat(3, 1));
        // q = (w − 2)²(w − 3): ∏_{k<l}(w_kw_l − 1) = (4−1)(6−1)(6−1) = 75.
        let q = Poly::new(vec![rat(-12, 1), rat(16, 1), rat(-7, 1), rat(1, 1)]);
        assert_eq!(delta_m(&q).unwrap(), rat(75, 1));
    }
}
