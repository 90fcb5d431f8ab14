//! Exact polynomial algebra over a field: gcd, the extended Euclidean
//! identity, Newton interpolation, Yun's squarefree decomposition, monic
//! square roots, resultants, and a bivariate gcd by evaluation and
//! interpolation in the second variable.

use crate::bivar::Bivar;
use crate::real::{Poly, PolyError};
use numerics::{Rat, Scalar};

/// Monic gcd. `gcd(p, 0) = monic(p)`; `gcd(0, 0) = 0`.
pub fn gcd<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> Poly<T> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.divrem(&b);
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        a.scale(&a.lead().recip())
    }
}

/// (g, s, t) with s·a + t·b = g and g the monic gcd.
pub fn extended_gcd<T: Scalar>(
    a: &Poly<T>,
    b: &Poly<T>,
) -> (Poly<T>, Poly<T>, Poly<T>) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = Poly::one();
    let mut s1 = Poly::zero();
    let mut t0 = Poly::zero();
    let mut t1 = Poly::one();
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = r0.lead().recip();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Newton interpolation through points with pairwise-distinct abscissae.
pub fn interpolate<T: Scalar>(points: &[(T, T)]) -> Poly<T> {
    let n = points.len();
    if n == 0 {
        return Poly::zero();
    }
    // Divided differences in place.
    let mut dd: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = points[i].0.clone() - points[i - level].0.clone();
            assert!(!dx.is_zero(), "interpolation abscissae must be distinct");
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) * dx.recip();
        }
    }
    // Horner over the Newton basis.
    let mut acc = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![-points[i].0.clone(), T::one()]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    acc
}

/// Yun's squarefree decomposition: p = lc · ∏ fᵢ^i with the fᵢ monic,
/// squarefree, and pairwise coprime. Returns (lc, [(fᵢ, i)]), zero exponents
/// omitted. Panics on zero input.
pub fn yun_squarefree<T: Scalar>(p: &Poly<T>) -> (T, Vec<(Poly<T>, u32)>) {
    assert!(!p.is_zero(), "squarefree decomposition of zero");
    let lead = p.lead();
    let p = p.scale(&lead.recip());
    if p.deg() == 0 {
        return (lead, Vec::new());
    }
    let dp = p.derivative();
    let g = gcd(&p, &dp);
    let mut u = p.exact_div(&g).expect("gcd divides");
    let mut v = dp.exact_div(&g).expect("gcd divides the derivative");
    let mut out = Vec::new();
    let mut i = 1u32;
    loop {
        let t = &v - &u.derivative();
        if u.deg() == 0 {
            break;
        }
        let f = gcd(&u, &t);
        if f.deg() > 0 {
            out.push((f.clone(), i));
        }
        u = u.exact_div(&f).expect("factor divides");
        v = t.exact_div(&f).expect("factor divides");
        i += 1;
    }
    (lead, out)
}

/// Monic square root of a monic even-degree polynomial, if one exists.
pub fn monic_sqrt<T: Scalar>(p: &Poly<T>) -> Option<Poly<T>> {
    let d = p.deg();
    if d < 0 || d % 2 != 0 || !(p.lead() - T::one()).is_zero() {
        return None;
    }
    let s = (d / 2) as usize;
    let mut c = vec![T::zero(); s + 1];
    c[s] = T::one();
    let half = T::from_ratio(1, 2);
    for k in 1..=s {
        // [x^{2s−k}] p = 2 c_{s−k} + Σ_{i+j = 2s−k, both > s−k} c_i c_j
        let mut cross = T::zero();
        let lo = s - k;
        for i in (lo + 1)..=s {
            let j = 2 * s - k - i;
            if j > lo && j <= s && j < i {
                cross = cross + T::from_int(2) * c[i].clone() * c[j].clone();
            } else if j == i {
                cross = cross + c[i].clone() * c[i].clone();
            }
        }
        c[lo] = (p.coeff(2 * s - k) - cross) * half.clone();
    }
    let root = Poly::new(c);
    if (&(&root * &root) - p).is_zero() {
        Some(root)
    } else {
        None
    }
}

/// Resultant of two polynomials via the Euclidean remainder sequence.
pub fn resultant<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> T {
    let m = a.deg();
    let n = b.deg();
    if m < 0 || n < 0 {
        return T::zero();
    }
    if n == 0 {
        let mut acc = T::one();
        for _ in 0..m {
            acc = acc * b.coeff(0);
        }
        return acc;
    }
    if m == 0 {
        let mut acc = T::one();
        for _ in 0..n {
            acc = acc * a.coeff(0);
        }
        return acc;
    }
    let (_, r) = a.divrem(b);
    if r.is_zero() {
        return T::zero();
    }
    let mut scale = T::one();
    for _ in 0..(m - r.deg()) {
        scale = scale * b.lead();
    }
    let sign = if (m * n) % 2 == 0 { T::one() } else { -T::one() };
    sign * scale * resultant(b, &r)
}

/// Exact bivariate division: returns q with p = d·q, or `None`. Works by
/// dividing at second-variable sample points, interpolating, and verifying
/// the product exactly; intended for exact scalars.
pub fn bivar_exact_div<T: Scalar>(p: &Bivar<T>, d: &Bivar<T>) -> Option<Bivar<T>> {
    assert_eq!(p.vars(), d.vars(), "variable pairs must agree");
    if d.is_zero() {
        return None;
    }
    if p.is_zero() {
        return Some(Bivar::zero(p.vars()));
    }
    if p.deg1() < d.deg1() || p.deg2() < d.deg2() {
        return None;
    }
    let q_d1 = (p.deg1() - d.deg1()) as usize;
    let q_d2 = (p.deg2() - d.deg2()) as usize;
    let lc_d = d.row_poly(d.deg1() as usize);
    // One univariate division per good sample point; q has deg2 ≤ q_d2.
    let mut samples: Vec<(T, Vec<T>)> = Vec::with_capacity(q_d2 + 1);
    let mut t = 0i64;
    while samples.len() <= q_d2 {
        t += 1;
        if t > 40 * (q_d2 as i64 + p.deg2() + 2) {
            return None;
        }
        let w0 = T::from_int(t);
        if lc_d.eval(&w0).is_zero() {
            continue;
        }
        let pn = p.eval_var2(&w0);
        let dn = d.eval_var2(&w0);
        match pn.exact_div(&dn) {
            Some(qn) if qn.deg() <= q_d1 as i64 => {
                let mut col = vec![T::zero(); q_d1 + 1];
                for (i, c) in qn.coeffs().iter().enumerate() {
                    col[i] = c.clone();
                }
                samples.push((w0, col));
            }
            _ => return None,
        }
    }
    let rows: Vec<Poly<T>> = (0..=q_d1)
        .map(|i| {
            let pts: Vec<(T, T)> = samples
                .iter()
                .map(|(w0, col)| (w0.clone(), col[i].clone()))
                .collect();
            interpolate(&pts)
        })
        .collect();
    let q = Bivar::from_rows(p.vars(), rows);
    if (&(&q * d) - p).is_zero() {
        Some(q)
    } else {
        None
    }
}

fn content_var2(p: &Bivar<Rat>) -> Poly<Rat> {
    let mut c = Poly::zero();
    for i in 0..=p.deg1().max(0) as usize {
        c = gcd(&c, &p.row_poly(i));
        if c.deg() == 0 {
            return Poly::one();
        }
    }
    c
}

/// Scale a nonzero rational bivariate polynomial so its coefficients are
/// coprime integers and the first nonzero coefficient in (i,j) order is
/// positive (so a nonzero value at the origin is positive).
pub fn normalize_primitive(p: &Bivar<Rat>) -> Bivar<Rat> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if p.is_zero() {
        return p.clone();
    }
    let mut den_lcm = BigInt::from(1);
    let mut num_gcd = BigInt::from(0);
    for i in 0..=p.deg1() as usize {
        for j in 0..=p.deg2() as usize {
            let c = p.coeff(i, j);
            if !c.is_zero() {
                den_lcm = den_lcm.lcm(c.denom());
                num_gcd = num_gcd.gcd(c.numer());
            }
        }
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    'outer: for i in 0..=p.deg1() as usize {
        for j in 0..=p.deg2() as usize {
            let c = p.coeff(i, j);
            if !c.is_zero() {
                if (c * scale.clone()).signum_i32() < 0 {
                    scale = -scale;
                }
                break 'outer;
            }
        }
    }
    p.scale(&scale)
}

/// Bivariate gcd over ℚ by Brown-style evaluation/interpolation in the
/// second variable, returned in primitive integer form with the first
/// nonzero coefficient positive. Exact; errors on zero input or when the
/// evaluation points cannot be reconciled with any polynomial divisor.
pub fn bivar_gcd(a: &Bivar<Rat>, b: &Bivar<Rat>) -> Result<Bivar<Rat>, PolyError> {
    assert_eq!(a.vars(), b.vars(), "variable pairs must agree");
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroInput {
            what: "gcd of a zero polynomial",
        });
    }
    let ca = content_var2(a);
    let cb = content_var2(b);
    let content_g = gcd(&ca, &cb);
    let ap = a
        .exact_div_poly_var2(&ca)
        .expect("content divides every row");
    let bp = b
        .exact_div_poly_var2(&cb)
        .expect("content divides every row");

    // Primitive-part gcd in the first variable, coefficients in ℚ[second].
    let lc_a = ap.row_poly(ap.deg1() as usize);
    let lc_b = bp.row_poly(bp.deg1() as usize);
    let gamma = gcd(&lc_a, &lc_b);
    let bound = gamma.deg().max(0) + ap.deg2().min(bp.deg2()).max(0);
    let needed = (bound + 1) as usize;

    let mut samples: Vec<(Rat, Poly<Rat>)> = Vec::new();
    let mut min_deg = i64::MAX;
    let mut t = 0i64;
    let budget = 40 * (needed as i64 + ap.deg2().max(bp.deg2()) + 8);
    // A sample at an unlucky point shows an inflated gcd degree; the
    // min-degree filter discards those as soon as one honest point appears.
    // When every collected point happens to be unlucky the trial division
    // below fails, so widen the sample set and try again.
    for attempt in 0..6 {
        let target = needed + attempt;
        while samples.len() < target {
            t += 1;
            if t > budget {
                return Err(PolyError::InterpolationInconsistent {
                    what: "ran out of evaluation points for the gcd",
                });
            }
            let w0 = Rat::from_int(t);
            if lc_a.eval(&w0).is_zero() || lc_b.eval(&w0).is_zero() {
                continue;
            }
            let g0 = gcd(&ap.eval_var2(&w0), &bp.eval_var2(&w0));
            let d0 = g0.deg();
            if d0 < min_deg {
                min_deg = d0;
                samples.clear();
            } else if d0 > min_deg {
                continue; // unlucky point
            }
            samples.push((w0.clone(), g0.scale(&gamma.eval(&w0))));
        }

        let g_pp = if min_deg == 0 {
            Bivar::one(a.vars())
        } else {
            let rows: Vec<Poly<Rat>> = (0..=min_deg as usize)
                .map(|i| {
                    let pts: Vec<(Rat, Rat)> = samples
                        .iter()
                        .take(needed)
                        .map(|(w0, g0)| (w0.clone(), g0.coeff(i)))
                        .collect();
                    interpolate(&pts)
                })
                .collect();
            let raw = Bivar::from_rows(a.vars(), rows);
            let c = content_var2(&raw);
            raw.exact_div_poly_var2(&c)
                .expect("content divides every row")
        };

        let g = normalize_primitive(&g_pp.mul_poly_var2(&content_g));
        // gcd of the contents is monic and multiplies a primitive part, so
        // the trial divisions below certify the full product.
        if bivar_exact_div(a, &g).is_some() && bivar_exact_div(b, &g).is_some()
        {
            return Ok(g);
        }
    }
    Err(PolyError::InterpolationInconsistent {
        what: "interpolated divisor failed trial division",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::VarPair;
    use numerics::rat;
    use proptest::prelude::*;

    #[test]
    fn gcd_of_cyclotomic_neighbors() {
        let a = Poly::<Rat>::from_ints(&[-1, 0, 1]); // x² − 1
        let b = Poly::<Rat>::from_ints(&[-1, 0, 0, 1]); // x³ − 1
        assert_eq!(gcd(&a, &b), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn extended_identity_holds() {
        let a = Poly::<Rat>::from_ints(&[2, 0, 1, 3]);
        let b = Poly::<Rat>::from_ints(&[-1, 5, 2]);
        let (g, s, t) = extended_gcd(&a, &b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, Poly::one()); // coprime pair
    }

    #[test]
    fn newton_interpolation_recovers_cubic() {
        let p = Poly::<Rat>::from_ints(&[3, -2, 0, 5]);
        let pts: Vec<(Rat, Rat)> = (0..4)
            .map(|k| (rat(k, 1), p.eval(&rat(k, 1))))
            .collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (x − 1)²(x + 2)³, leading coefficient 4
        let f1 = Poly::<Rat>::from_ints(&[-1, 1]);
        let f2 = Poly::<Rat>::from_ints(&[2, 1]);
        let p = (&(&(&f1 * &f1) * &(&(&f2 * &f2) * &f2))).scale(&rat(4, 1));
        let (lead, parts) = yun_squarefree(&p);
        assert_eq!(lead, rat(4, 1));
        assert_eq!(parts, vec![(f1, 2), (f2, 3)]);
    }

    #[test]
    fn monic_sqrt_roundtrip() {
        let s = Poly::<Rat>::new(vec![rat(5, 7), rat(3, 1), rat(1, 1)]);
        let p = &s * &s;
        assert_eq!(monic_sqrt(&p), Some(s));
        let not_square = Poly::<Rat>::from_ints(&[1, 1, 0, 0, 1]);
        assert_eq!(monic_sqrt(&not_square), None);
    }

    #[test]
    fn resultant_examples() {
        let a = Poly::<Rat>::from_ints(&[2, -3, 1]); // (x−1)(x−2)
        let b = Poly::<Rat>::from_ints(&[-3, 1]); // x − 3
        assert_eq!(resultant(&a, &b), rat(2, 1));
        let c = Poly::<Rat>::from_ints(&[-1, 1]); // shares root 1
        assert_eq!(resultant(&a, &c), rat(0, 1));
    }

    #[test]
    fn resultant_via_product_of_evaluations() {
        // res(a, b) = lc(b)^{deg a} ∏_{b(β)=0} a(β), checked with b split.
        let a = Poly::<Rat>::from_ints(&[1, 4, 0, 2]);
        let b = &Poly::<Rat>::from_ints(&[-5, 1]) * &Poly::from_ints(&[7, 2]);
        let expected = a.eval(&rat(5, 1)) * a.eval(&rat(-7, 2)) * rat(8, 1);
        assert_eq!(resultant(&a, &b), expected);
    }

    #[test]
    fn bivar_gcd_of_coprime_is_one() {
        let a = Bivar::<Rat>::from_ints(VarPair::ZW, &[&[1, 1], &[0, 1]]);
        let b = Bivar::<Rat>::from_ints(VarPair::ZW, &[&[3, 0, 1]]);
        let g = bivar_gcd(&a, &b).unwrap();
        assert_eq!(g, Bivar::one(VarPair::ZW));
    }

    #[test]
    fn bivar_gcd_extracts_shared_factor() {
        // (2 − zw) is the primitive form of (1 − zw/2).
        let omega = Bivar::<Rat>::new(
            VarPair::ZW,
            vec![vec![rat(1, 1)], vec![rat(0, 1), rat(-1, 2)]],
        );
        let f1 = Bivar::from_ints(VarPair::ZW, &[&[2], &[-1]]); // 2 − z
        let f2 = Bivar::from_ints(VarPair::ZW, &[&[3, -1]]); // 3 − w
        let a = &omega * &f1;
        let b = &omega * &f2;
        let g = bivar_gcd(&a, &b).unwrap();
        assert_eq!(g, Bivar::from_ints(VarPair::ZW, &[&[2], &[0, -1]]));
    }

    #[test]
    fn bivar_exact_division_detects_failure() {
        let p = Bivar::<Rat>::from_ints(VarPair::ZW, &[&[1, 2], &[3, 4]]);
        let d = Bivar::<Rat>::from_ints(VarPair::ZW, &[&[1, 1]]);
        assert!(bivar_exact_div(&p, &d).is_none());
        let prod = &p * &d;
        assert_eq!(bivar_exact_div(&prod, &d), Some(p));
    }

    proptest! {
        #[test]
        fn planted_factor_divides_the_gcd(
            ga in proptest::collection::vec(-4i64..=4, 1..=4),
            aa in proptest::collection::vec(-4i64..=4, 1..=4),
            bb in proptest::collection::vec(-4i64..=4, 1..=4),
        ) {
            let mk = |v: &[i64], split: usize| {
                let rows: Vec<&[i64]> = v.chunks(split.max(1)).collect();
                Bivar::<Rat>::from_ints(VarPair::ZW, &rows)
            };
            let g = mk(&ga, 2);
            let a = mk(&aa, 2);
            let b = mk(&bb, 2);
            prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
            let found = bivar_gcd(&(&a * &g), &(&b * &g)).unwrap();
            // The planted factor divides the reported gcd.
            prop_assert!(bivar_exact_div(&found, &normalize_primitive(&g)).is_some());
        }

        #[test]
        fn interpolation_matches_evaluation(
            coeffs in proptest::collection::vec(-9i64..=9, 1..=6),
        ) {
            let p = Poly::<Rat>::new(coeffs.iter().map(|&c| rat(c, 1)).collect());
            let pts: Vec<(Rat, Rat)> = (0..coeffs.len() as i64)
                .map(|k| (rat(k, 1), p.eval(&rat(k, 1))))
                .collect();
            prop_assert_eq!(interpolate(&pts), p);
        }
    }
}
