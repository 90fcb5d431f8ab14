//! Exact recovery of the weight data `(q, p)` from a Bezout kernel.
//!
//! For a weight `(4/π²)·√(1−x²)√(1−y²)/(q(x) · p(x,w)p(x,1/w))` the kernel
//! collapses to the product form
//!
//! ```text
//!   K(x; y, y₁) = q(x) · [ (p_m(y₁)p_{m−1}(y) − p_m(y)p_{m−1}(y₁)) / (2(y₁−y))
//!                        + p_m(y) p_m(y₁) ],
//! ```
//!
//! where `p_m, p_{m−1}` are the fiber polynomials of `p`:
//! `p(x,w) = w^m (p_m(y;x) − w·p_{m−1}(y;x))`, `y = (w+1/w)/2`.
//! This module inverts that collapse, exactly over the rationals:
//!
//! 1. the corner slot `K[y^m y₁^m] = q·p_{m,m}²` is split by square-free
//!    factorization into `q` (odd-multiplicity part) and `p_{m,m}` (the
//!    repeated part),
//! 2. the top slice `[y₁^m] K = q·p_{m,m}·p_m(y)` yields `p_m` by exact
//!    division,
//! 3. the next slice `[y₁^{m−1}] K` yields `p_{m−1}`,
//! 4. the pair folds back into `p(x,w)`, and the full kernel identity is
//!    re-verified exactly — any failure means the table does not come from
//!    a weight of this shape.
//!
//! The recovered `p` is rational only up to one global square root: the
//! result is returned as a rational `p_primitive` together with the
//! rational factor `p_scale_sq`, so that `p = √(p_scale_sq)·p_primitive`.
//! The gauge is `q(0) = 1`, `p` free of nonconstant `x`-only factors, and
//! `p(0,0) > 0`.

use crate::kernel::BezoutKernel;
use crate::Bs2dError;
use numerics::{rational_snap, Rat, Scalar};
use poly::{gcd, iso, yun_squarefree, Bivar, Poly, VarPair};

/// The recovered weight data.  The underlying weight denominator is
/// `q(x) · p(x,w) p(x,1/w)` with `p = √(p_scale_sq) · p_primitive`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    /// Positive factor in the outer variable, normalized to `q(0) = 1`
    /// (monic when that value vanishes; see `monic_fallback`).
    pub q: Poly<Rat>,
    /// Rational carrier of `p`, in the variables `(x, w)`, free of
    /// nonconstant `x`-only factors, first nonzero coefficient positive.
    pub p_primitive: Bivar<Rat>,
    /// The square of the irrational normalization: `p = √(p_scale_sq)·p_primitive`.
    pub p_scale_sq: Rat,
    /// True when `q(0) = 0` forced the monic gauge instead of `q(0) = 1`.
    pub monic_fallback: bool,
}

impl Reconstruction {
    /// Fiber degree of `p` in `w` divided by two (the inner degree `m`).
    pub fn inner_degree(&self) -> usize {
        (self.p_primitive.deg2() as usize).div_ceil(2)
    }

    /// Float evaluation of `p(x, w)`.
    pub fn p_eval(&self, x: f64, w: f64) -> f64 {
        let scale = Scalar::to_f64(&self.p_scale_sq).sqrt();
        scale * self.p_primitive.to_f64().eval(&x, &w)
    }
}

/// Recover `(q, p)` from a kernel, exactly.  Errors with
/// [`Bs2dError::NoSolution`] when the kernel does not have the product
/// structure, and [`Bs2dError::DegenerateNormalization`] when the corner
/// slot vanishes identically.
pub fn reconstruct_qp(kernel: &BezoutKernel<Rat>) -> Result<Reconstruction, Bs2dError> {
    let m = kernel.m;
    let s = kernel.entry(m, m);
    if s.is_zero() {
        return Err(Bs2dError::DegenerateNormalization);
    }

    // Square-free split of the corner slot s = q·p_{m,m}²: the odd part
    // goes to q, the repeated part to the fiber leading coefficient.
    let (lead, factors) = yun_squarefree(&s);
    let mut sigma = Poly::constant(lead);
    let mut tau = Poly::one();
    for (f, mult) in &factors {
        if mult % 2 == 1 {
            sigma = &sigma * f;
        }
        for _ in 0..mult / 2 {
            tau = &tau * f;
        }
    }
    // Gauge: q(0) = 1 when possible, monic otherwise.
    let (gamma, monic_fallback) = gauge_constant(&sigma);
    let mut q = sigma.scale(&gamma.recip());
    let mut scale_sq = gamma.recip();

    // Top slice: [y₁^m] K = q·p_{m,m}·p_m, so p̃_m := √γ·p_m is rational.
    let g_m = Bivar::from_cols(VarPair::XY, (0..=m).map(|i| kernel.entry(i, m)).collect());
    let divisor = &q * &tau;
    let p_m = g_m
        .exact_div_poly_var1(&divisor)
        .ok_or(Bs2dError::NoSolution { stage: "top fiber slice division" })?;
    if p_m.deg2() > m as i64 {
        return Err(Bs2dError::NoSolution { stage: "top fiber degree" });
    }

    // Next slice: [y₁^{m−1}] K = q·(½ p_{m,m} p_{m−1}(y) + p_{m,m−1} p_m(y)),
    // so p̃_{m−1} = 2(γ·g_{m−1} − q·c̃_{m−1}·p̃_m) / (γ·q·τ) with
    // c̃_{m−1} = [y^{m−1}] p̃_m.
    let p_m1 = if m == 0 {
        Bivar::zero(VarPair::XY)
    } else {
        let g_m1 =
            Bivar::from_cols(VarPair::XY, (0..=m).map(|i| kernel.entry(i, m - 1)).collect());
        let c_m1 = p_m.col_poly(m - 1);
        let num = &g_m1.scale(&gamma) - &p_m.mul_poly_var1(&(&q * &c_m1));
        let den = (&q * &tau).scale(&gamma);
        let half = num
            .exact_div_poly_var1(&den)
            .ok_or(Bs2dError::NoSolution { stage: "second fiber slice division" })?;
        let two = half.scale(&Rat::from_int(2));
        if two.deg2() > m as i64 - 1 {
            return Err(Bs2dError::NoSolution { stage: "second fiber degree" });
        }
        two
    };

    // Re-verify the complete kernel identity, exactly:
    //   γ·K[i][j] = q·( DD̃[i][j] + p̃m_i·p̃m_j )
    // with DD̃ the divided difference built from the scaled pair.
    verify_kernel(kernel, &q, &gamma, &p_m, &p_m1)?;

    // Fold the fiber pair into p(x, w).
    let mut p = iso::pair_to_w(&p_m, &p_m1, m)
        .map_err(|_| Bs2dError::NoSolution { stage: "fiber pair folding" })?;

    // Canonical gauge: move any nonconstant x-only content of p into q as
    // a square, then restore q's normalization.
    let mut content = Poly::zero();
    for j in 0..=p.deg2().max(0) as usize {
        content = gcd(&content, &p.col_poly(j));
    }
    let mut fallback = monic_fallback;
    if content.deg() > 0 {
        p = p
            .exact_div_poly_var1(&content)
            .expect("content divides every coefficient");
        let q_raw = &(&q * &content) * &content;
        let (gamma2, fb2) = gauge_constant(&q_raw);
        q = q_raw.scale(&gamma2.recip());
        scale_sq = scale_sq * gamma2;
        fallback = fallback || fb2;
    }

    // Make the rational carrier integer-primitive with positive sign,
    // folding the extracted constant into the scale.
    let prim = poly::normalize_primitive(&p);
    let lambda = reference_ratio(&p, &prim);
    scale_sq = scale_sq * lambda.clone() * lambda;

    if scale_sq.is_zero() || (!fallback && scale_sq.signum_i32() < 0) {
        return Err(Bs2dError::NoSolution { stage: "positive normalization" });
    }
    Ok(Reconstruction { q, p_primitive: prim, p_scale_sq: scale_sq, monic_fallback: fallback })
}

/// The constant `λ` with `p = λ·prim`, read off at the first nonzero slot.
fn reference_ratio(p: &Bivar<Rat>, prim: &Bivar<Rat>) -> Rat {
    for i in 0..=prim.deg1().max(0) as usize {
        for j in 0..=prim.deg2().max(0) as usize {
            let c = prim.coeff(i, j);
            if !c.is_zero() {
                return p.coeff(i, j) / c;
            }
        }
    }
    Rat::one()
}

/// Snap a floating kernel onto rationals (denominators up to `max_den`)
/// and reconstruct exactly.  Intended for tables that are rational up to
/// rounding; genuinely irrational kernels will fail to snap.
pub fn reconstruct_qp_f64(
    kernel: &BezoutKernel<f64>,
    max_den: i64,
) -> Result<Reconstruction, Bs2dError> {
    let m = kernel.m;
    let mut entries = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let float = kernel.entry(i, j);
            let mut coeffs = Vec::new();
            for k in 0..=float.deg().max(0) as usize {
                let c = float.coeff(k);
                let snapped = rational_snap(c, max_den).ok_or_else(|| {
                    Bs2dError::Numerical(format!(
                        "kernel coefficient {c} does not snap to a rational"
                    ))
                })?;
                coeffs.push(snapped);
            }
            row.push(Poly::new(coeffs));
        }
        entries.push(row);
    }
    let exact =
        BezoutKernel::from_parts(kernel.n, kernel.m, poly::MatPoly::from_entries(&entries));
    reconstruct_qp(&exact)
}

/// The gauge constant of `q`: its value at 0 when nonzero (standard
/// gauge), otherwise its leading coefficient (monic fallback).
fn gauge_constant(sigma: &Poly<Rat>) -> (Rat, bool) {
    let at0 = sigma.eval(&Rat::zero());
    if !at0.is_zero() {
        (at0, false)
    } else {
        (sigma.lead(), true)
    }
}

/// Exact verification of the product form:
/// `γ·K[i][j] == q·(DD̃[i][j] + p̃m_i·p̃m_j)` for all slots, where
/// `DD̃[i][j] = ½ Σ_{t≥0} Ñ[i−t][j+1+t]` and
/// `Ñ[a][b] = p̃m_b·p̃m1_a − p̃m_a·p̃m1_b`.
fn verify_kernel(
    kernel: &BezoutKernel<Rat>,
    q: &Poly<Rat>,
    gamma: &Rat,
    p_m: &Bivar<Rat>,
    p_m1: &Bivar<Rat>,
) -> Result<(), Bs2dError> {
    let m = kernel.m;
    let col = |b: &Bivar<Rat>, i: usize| -> Poly<Rat> {
        if b.is_zero() || i as i64 > b.deg2() {
            Poly::zero()
        } else {
            b.col_poly(i)
        }
    };
    let pm: Vec<Poly<Rat>> = (0..=m).map(|i| col(p_m, i)).collect();
    let pm1: Vec<Poly<Rat>> = (0..=m).map(|i| col(p_m1, i)).collect();
    let n_slot = |a: usize, b: usize| -> Poly<Rat> {
        if a > m || b > m {
            return Poly::zero();
        }
        &(&pm[b] * &pm1[a]) - &(&pm[a] * &pm1[b])
    };
    let half = Rat::from_ratio(1, 2);
    for i in 0..=m {
        for j in 0..=m {
            let mut dd = Poly::zero();
            let mut t = 0usize;
            while t <= i && j + 1 + t <= m {
                dd = &dd + &n_slot(i - t, j + 1 + t);
                t += 1;
            }
            let rhs = q * &(&dd.scale(&half) + &(&pm[i] * &pm[j]));
            let lhs = kernel.entry(i, j).scale(gamma);
            if lhs != rhs {
                return Err(Bs2dError::NoSolution { stage: "kernel identity" });
            }
        }
    }
    Ok(())
}
