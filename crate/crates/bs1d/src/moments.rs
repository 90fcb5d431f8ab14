//! Exact power moments of (2/π)·√(1−y²)/|q(w)|² dy, y = (w + 1/w)/2.
//!
//! On the circle the weight transforms into a rational Laurent series whose
//! constant terms give the moments: with s̃(w) = (w − 1/w)²/(q(w) q(1/w)),
//!
//!   h_j = −2^{−(j+1)} · [w⁰] ( (w + 1/w)^j · s̃(w) ).
//!
//! Splitting q into boundary and interior parts and the annulus series into
//! its inner and outer halves by a Bezout identity keeps everything in ℚ.

use crate::stable::StableFactor;
use crate::Bs1dError;
use numerics::{Mat, Rat, Scalar};
use poly::{extended_gcd, Laurent, Poly};

/// Power-series coefficients of 1/den up to index `upto` (den(0) ≠ 0).
fn series_coeffs(den: &Poly<Rat>, upto: usize) -> Vec<Rat> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero(), "series requires a unit constant term");
    let inv = d0.recip();
    let deg = den.deg().max(0) as usize;
    let mut s = Vec::with_capacity(upto + 1);
    s.push(inv.clone());
    for t in 1..=upto {
        let mut acc = Rat::zero();
        for i in 1..=deg.min(t) {
            acc = acc + den.coeff(i) * s[t - i].clone();
        }
        s.push(-acc * inv.clone());
    }
    s
}

/// [w^k] of L(w) · S(w) where S is the power series with coefficients `s`.
fn laurent_times_series_coeff(l: &Laurent<Rat>, s: &[Rat], k: i64) -> Rat {
    let mut acc = Rat::zero();
    for (e, c) in l.terms() {
        let idx = k - e;
        if idx >= 0 {
            let idx = idx as usize;
            assert!(idx < s.len(), "series computed too short");
            acc = acc + c.clone() * s[idx].clone();
        }
    }
    acc
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * Rat::from_int((n - i) as i64) * Rat::from_int(i as i64 + 1).recip();
    }
    acc
}

/// First `count` moments h_0, …, h_{count−1}, exactly.
pub fn moments_from_q(sf: &StableFactor, count: usize) -> Result<Vec<Rat>, Bs1dError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let jmax = (count - 1) as i64;
    let m = sf.q().deg();
    let qs = sf.interior();
    let ms = qs.deg().max(0) as usize;
    let rev = qs.reverse(ms).expect("bound is the degree");

    // Boundary numerator (w−1)^{2−2ν₁} (w+1)^{2−2ν₂} carrying sign (−1)^{ν₁},
    // shifted by w^{m−2}.
    let mut numer = Poly::<Rat>::one();
    let copies_plus = if sf.zero_at_one() { 0 } else { 2 };
    let copies_minus = if sf.zero_at_minus_one() { 0 } else { 2 };
    for _ in 0..copies_plus {
        numer = &numer * &Poly::from_ints(&[-1, 1]);
    }
    for _ in 0..copies_minus {
        numer = &numer * &Poly::from_ints(&[1, 1]);
    }
    if sf.zero_at_one() {
        numer = numer.scale(&-Rat::one());
    }
    let p0 = Laurent::from_poly(&numer, m - 2);

    // 1/(q_s · rev) = aco/rev + bco/q_s on the annulus.
    let (g, aco, bco) = extended_gcd(qs, &rev);
    if g.deg() != 0 {
        return Err(Bs1dError::NotStable {
            reason: "interior part shares a factor with its reversal",
        });
    }
    let la = if bco.is_zero() {
        Laurent::zero()
    } else {
        &p0 * &Laurent::from_poly(&bco, 0)
    };
    // The outer half becomes a power series after w ↦ 1/u, with the SAME
    // denominator q_s: a(1/u)/rev(1/u) = u^{m_s − deg a} · rev(a)(u) / q_s(u).
    let lb = if aco.is_zero() {
        Laurent::zero()
    } else {
        let da = aco.deg() as usize;
        let ra = aco.reverse(da).expect("bound is the degree");
        &p0.invert_var() * &Laurent::from_poly(&ra, ms as i64 - da as i64)
    };

    let lo_a = if la.is_zero() { 0 } else { la.min_exp() };
    let lo_b = if lb.is_zero() { 0 } else { lb.min_exp() };
    let len = (jmax - lo_a.min(lo_b)).max(0) as usize + 1;
    let s = series_coeffs(qs, len);

    let c = |k: i64| -> Rat {
        let mut acc = Rat::zero();
        if !la.is_zero() {
            acc = acc + laurent_times_series_coeff(&la, &s, k);
        }
        if !lb.is_zero() {
            // [w^k] of the outer half is the u-coefficient at −k.
            acc = acc + laurent_times_series_coeff(&lb, &s, -k);
        }
        acc
    };

    let cs: Vec<Rat> = (0..=jmax).map(c).collect();
    for k in 1..=jmax {
        assert_eq!(cs[k as usize], c(-k), "annulus series must be symmetric");
    }

    let mut out = Vec::with_capacity(count);
    for j in 0..=jmax as usize {
        let mut acc = Rat::zero();
        for t in 0..=j {
            let idx = j as i64 - 2 * t as i64;
            let coeff = binomial(j, t);
            acc = acc + coeff * cs[idx.unsigned_abs() as usize].clone();
        }
        let mut pow = Rat::one();
        for _ in 0..=j {
            pow = pow * Rat::from_ratio(1, 2);
        }
        out.push(-acc * pow);
    }
    Ok(out)
}

/// Square Hankel matrix from an odd-length moment list h_0, …, h_{2k}.
pub fn hankel_matrix(h: &[Rat]) -> Mat<Rat> {
    assert!(h.len() % 2 == 1, "need an odd number of moments");
    let k = (h.len() - 1) / 2;
    Mat::from_fn(k + 1, k + 1, |i, j| h[i + j].clone())
}
