//! Exact cross-cutting invariants of the one-dimensional symbol calculus,
//! checked over randomly generated admissible symbols: moment/symbol
//! roundtrips, the resultant identity for the pair-product invariant, the
//! reproducing-kernel bracket, closed-form low-degree moments, and
//! orthogonality of the closed-form family.

use bs1d::{
    delta_m, moments_from_q, orthonormal_from_q, recover_q_from_hankel, reproducing_kernel,
    StableFactor,
};
use numerics::{rat, Rat, Scalar};
use poly::{resultant, u_component, Poly};
use proptest::prelude::*;

/// 1 − w/r with rational |r| > 1: one zero strictly outside the disk.
fn linear_factor() -> impl Strategy<Value = Poly<Rat>> {
    (1i64..6, 1i64..8, any::<bool>()).prop_map(|(d, e, neg)| {
        let num = d + e;
        let c = if neg { rat(d, num) } else { -rat(d, num) };
        Poly::new(vec![Rat::one(), c])
    })
}

/// s − 2aw + w² with conjugate zeros of squared modulus s > 1.
fn quadratic_factor() -> impl Strategy<Value = Poly<Rat>> {
    (1i64..8, 1i64..6, -4i64..=4, 5i64..9).prop_map(|(e, f, an, ad)| {
        let s = Rat::one() + rat(e, f);
        Poly::new(vec![s, rat(-2 * an, ad), Rat::one()])
    })
}

/// Random admissible symbol of degree ≤ max_deg: a positive constant times
/// optional simple boundary zeros at ±1 times outside-zero factors.
fn stable_symbol(max_deg: usize) -> impl Strategy<Value = Poly<Rat>> {
    (
        proptest::collection::vec(linear_factor(), 0..3),
        proptest::collection::vec(quadratic_factor(), 0..3),
        any::<bool>(),
        any::<bool>(),
        2i64..7,
    )
        .prop_map(move |(lins, quads, b1, b2, c0)| {
            let mut q = Poly::constant(rat(c0, 2));
            let mut deg = 0usize;
            if b1 && deg + 1 <= max_deg {
                q = &q * &Poly::from_ints(&[1, -1]);
                deg += 1;
            }
            if b2 && deg + 1 <= max_deg {
                q = &q * &Poly::from_ints(&[1, 1]);
                deg += 1;
            }
            for f in &quads {
                if deg + 2 <= max_deg {
                    q = &q * f;
                    deg += 2;
                }
            }
            for f in &lins {
                if deg + 1 <= max_deg {
                    q = &q * f;
                    deg += 1;
                }
            }
            q
        })
}

fn moments_of(q: &Poly<Rat>, count: usize) -> Vec<Rat> {
    let sf = StableFactor::from_symbol(q).expect("generator yields admissible symbols");
    moments_from_q(&sf, count).expect("admissible symbols have exact moments")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_roundtrip_recovers_the_symbol(q in stable_symbol(6)) {
        let m = q.deg().max(0) as usize;
        let k = m.div_ceil(2);
        let h = moments_of(&q, 2 * k + 1);
        let rec = recover_q_from_hankel(&h).unwrap();
        prop_assert_eq!(rec.scale_sq, Rat::one());
        prop_assert_eq!(rec.q, q);
    }

    #[test]
    fn rational_rescaling_folds_exactly(q in stable_symbol(5), tn in 1i64..5, td in 1i64..5) {
        // Scaling the moments by t² corresponds to the symbol q/t; a
        // rational t must come back folded into the coefficients.
        let t = rat(tn, td);
        let m = q.deg().max(0) as usize;
        let k = m.div_ceil(2);
        let h: Vec<Rat> = moments_of(&q, 2 * k + 1)
            .into_iter()
            .map(|v| v * t.clone() * t.clone())
            .collect();
        let rec = recover_q_from_hankel(&h).unwrap();
        prop_assert_eq!(rec.scale_sq, Rat::one());
        prop_assert_eq!(rec.q, q.scale(&t.recip()));
    }

    #[test]
    fn reversal_resultant_factors_through_the_invariant(q in stable_symbol(6)) {
        // Res(q, w^m q(1/w)) = (−1)^m q(1) q(−1) Δ², exactly over ℚ.
        let m = q.deg();
        prop_assume!(m >= 1);
        let rev = q.reverse(m as usize).unwrap();
        let res = resultant(&q, &rev);
        let d = delta_m(&q).unwrap();
        let sign = if m % 2 == 1 { -Rat::one() } else { Rat::one() };
        let rhs = sign * q.eval(&Rat::one()) * q.eval(&(-Rat::one())) * d.clone() * d;
        prop_assert_eq!(res, rhs);
    }

    #[test]
    fn kernel_matches_the_neighbor_bracket(
        q in stable_symbol(6),
        kk in 0usize..4,
        yn in -6i64..=6,
        dn in 1i64..=5,
    ) {
        // The inverse moment matrix, read as a polynomial kernel, equals
        // (p_{k+1}(y) p_k(y₁) − p_k(y) p_{k+1}(y₁)) / (2(y − y₁)) with the
        // raw closed-form family, in both normalization regimes.
        let m = q.deg().max(0) as usize;
        let k = kk.max(m.saturating_sub(2).div_ceil(2));
        let h = moments_of(&q, 2 * k + 1);
        let g = reproducing_kernel(&h).unwrap();
        let y = rat(yn, 7);
        let y1 = y.clone() + rat(dn, 3);
        let mut lhs = Rat::zero();
        let mut ypow = Rat::one();
        for i in 0..=k {
            let mut y1pow = Rat::one();
            for j in 0..=k {
                lhs = lhs + g[(i, j)].clone() * ypow.clone() * y1pow.clone();
                y1pow = y1pow * y1.clone();
            }
            ypow = ypow * y.clone();
        }
        let a = u_component(&q, k as i64 + 1);
        let b = u_component(&q, k as i64);
        let num = a.eval(&y) * b.eval(&y1) - b.eval(&y) * a.eval(&y1);
        let rhs = num * (rat(2, 1) * (y - y1)).recip();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_forms_for_low_degree_moments(q in stable_symbol(4)) {
        // For degree ≤ 4 the invariant and the first three moments have
        // polynomial closed forms in the coefficients.
        let (q0, q1, q2, q3, q4) = (q.coeff(0), q.coeff(1), q.coeff(2), q.coeff(3), q.coeff(4));
        let delta = q0.clone() * q0.clone() * q0.clone()
            - q0.clone() * q0.clone() * q2.clone()
            + q0.clone() * q1.clone() * q3.clone()
            - q0.clone() * q3.clone() * q3.clone()
            - q0.clone() * q0.clone() * q4.clone()
            - q1.clone() * q1.clone() * q4.clone()
            + rat(2, 1) * q0.clone() * q2.clone() * q4.clone()
            + q1.clone() * q3.clone() * q4.clone()
            - q0.clone() * q4.clone() * q4.clone()
            - q2.clone() * q4.clone() * q4.clone()
            + q4.clone() * q4.clone() * q4.clone();
        if q.deg() == 4 {
            prop_assert_eq!(delta_m(&q).unwrap(), delta.clone());
        }
        let h = moments_of(&q, 3);
        prop_assert_eq!(h[0].clone(), (q0.clone() - q4.clone()) * delta.clone().recip());
        prop_assert_eq!(
            h[1].clone(),
            (q3.clone() - q1.clone()) * (rat(2, 1) * delta.clone()).recip()
        );
        let h2_num = q0.clone() * q0.clone() + q1.clone() * q1.clone()
            - q0.clone() * q2.clone()
            - q1.clone() * q3.clone()
            + q2.clone() * q4.clone()
            - q4.clone() * q4.clone();
        prop_assert_eq!(h[2].clone(), h2_num * (rat(4, 1) * q0 * delta).recip());
    }

    #[test]
    fn family_is_orthogonal_under_the_moment_pairing(q in stable_symbol(5)) {
        let m = q.deg().max(0) as usize;
        let k0 = m.saturating_sub(2).div_ceil(2);
        let kmax = k0 + 3;
        let h = moments_of(&q, 2 * kmax + 1);
        let pair = |a: &Poly<Rat>, b: &Poly<Rat>| -> Rat {
            let prod = a * b;
            (0..=prod.deg().max(0) as usize)
                .map(|t| prod.coeff(t) * h[t].clone())
                .fold(Rat::zero(), |acc, v| acc + v)
        };
        let members: Vec<_> = (k0..=kmax)
            .map(|k| orthonormal_from_q(&q, k).unwrap())
            .collect();
        for a in &members {
            prop_assert_eq!(pair(&a.poly, &a.poly), a.norm_sq.clone());
            for b in &members {
                if a.index != b.index {
                    prop_assert_eq!(pair(&a.poly, &b.poly), Rat::zero());
                }
            }
        }
    }
}

#[test]
fn full_feature_symbol_roundtrip() {
    // Both boundary zeros, a complex pair, and a real outside zero at once.
    let q = [
        Poly::<Rat>::from_ints(&[1, -1]),
        Poly::from_ints(&[1, 1]),
        Poly::new(vec![rat(5, 2), rat(-1, 2), rat(1, 1)]),
        Poly::new(vec![rat(1, 1), rat(1, 2)]),
    ]
    .iter()
    .fold(Poly::constant(rat(3, 2)), |acc, f| &acc * f);
    let m = q.deg() as usize;
    let k = m.div_ceil(2);
    let h = moments_of(&q, 2 * k + 1);
    let rec = recover_q_from_hankel(&h).unwrap();
    assert_eq!(rec.q, q);
    assert_eq!(rec.scale_sq, Rat::one());
}
