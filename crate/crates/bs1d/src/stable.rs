//! Admissible symbols: q with no zeros in the closed unit disk apart from
//! possible simple zeros at ±1, normalized by q(0) > 0. Includes an exact
//! Schur–Cohn stability test and a numerical spectral factorization of a
//! weight denominator given on the interval.

use crate::Bs1dError;
use numerics::{poly_roots, Rat, Scalar, ToleranceConfig, C64};
use poly::{cheb_pullback_poly, Poly};

/// All roots strictly inside the unit circle, decided exactly over ℚ by the
/// Schur–Cohn recursion. Nonzero constants count as stable (vacuously).
pub fn is_schur_stable(p: &Poly<Rat>) -> bool {
    let mut p = p.clone();
    loop {
        let n = p.deg();
        if n <= 0 {
            return n == 0;
        }
        let a0 = p.coeff(0);
        let an = p.lead();
        // |a0| < |an| ⟺ a0² < an², exactly.
        if a0.clone() * a0.clone() >= an.clone() * an.clone() {
            return false;
        }
        let gamma = a0 * an.recip();
        let star = p.reverse(n as usize).expect("bound is the degree");
        let top = &p - &star.scale(&gamma);
        // top has zero constant term and degree exactly n; divide by w.
        debug_assert!(top.coeff(0).is_zero());
        p = Poly::new(top.coeffs()[1..].to_vec());
    }
}

fn no_roots_in_closed_disk(p: &Poly<Rat>) -> bool {
    if p.deg() <= 0 {
        return !p.is_zero();
    }
    if p.coeff(0).is_zero() {
        return false; // zero root
    }
    is_schur_stable(&p.reverse(p.deg() as usize).expect("bound is the degree"))
}

/// A validated symbol together with its boundary-zero split
/// q = (1 − w)^{ν₁} (1 + w)^{ν₂} q_s, ν ∈ {0, 1}, q_s zero-free on the
/// closed disk.
#[derive(Debug, Clone, PartialEq)]
pub struct StableFactor {
    q: Poly<Rat>,
    interior: Poly<Rat>,
    zero_at_one: bool,
    zero_at_minus_one: bool,
}

impl StableFactor {
    pub fn from_symbol(q: &Poly<Rat>) -> Result<Self, Bs1dError> {
        if q.is_zero() {
            return Err(Bs1dError::NotStable {
                reason: "the zero polynomial is not a symbol",
            });
        }
        if q.coeff(0).signum_i32() <= 0 {
            return Err(Bs1dError::NotStable {
                reason: "symbol must be positive at the origin",
            });
        }
        let one = Rat::one();
        let minus_one = -Rat::one();
        let mut interior = q.clone();
        let mut zero_at_one = false;
        let mut zero_at_minus_one = false;
        if interior.eval(&one).is_zero() {
            interior = interior
                .exact_div(&Poly::from_ints(&[1, -1]))
                .expect("value at 1 vanishes");
            zero_at_one = true;
            if interior.eval(&one).is_zero() {
                return Err(Bs1dError::NotStable {
                    reason: "zero at w = 1 must be simple",
                });
            }
        }
        if interior.eval(&minus_one).is_zero() {
            interior = interior
                .exact_div(&Poly::from_ints(&[1, 1]))
                .expect("value at −1 vanishes");
            zero_at_minus_one = true;
            if interior.eval(&minus_one).is_zero() {
                return Err(Bs1dError::NotStable {
                    reason: "zero at w = −1 must be simple",
                });
            }
        }
        if !no_roots_in_closed_disk(&interior) {
            return Err(Bs1dError::NotStable {
                reason: "zeros in the closed unit disk",
            });
        }
        Ok(StableFactor {
            q: q.clone(),
            interior,
            zero_at_one,
            zero_at_minus_one,
        })
    }

    pub fn q(&self) -> &Poly<Rat> {
        &self.q
    }

    /// The disk-zero-free part q_s.
    pub fn interior(&self) -> &Poly<Rat> {
        &self.interior
    }

    pub fn zero_at_one(&self) -> bool {
        self.zero_at_one
    }

    pub fn zero_at_minus_one(&self) -> bool {
        self.zero_at_minus_one
    }

    pub fn degree(&self) -> usize {
        self.q.deg() as usize
    }
}

fn conj_partner(pool: &mut Vec<C64>, r: C64, tol: f64) -> Option<C64> {
    let target = r.conj();
    let mut best: Option<(usize, f64)> = None;
    for (i, cand) in pool.iter().enumerate() {
        let d = (cand - target).norm();
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    match best {
        Some((i, d)) if d <= tol => Some(pool.swap_remove(i)),
        _ => None,
    }
}

/// Factor a weight denominator Q(x), nonnegative on [−1, 1], as
/// Q(x) = q(z) q(1/z) with x = (z + 1/z)/2 and q admissible (zero-free in
/// the closed disk except simple zeros at ±1), q(0) > 0.
pub fn stable_fejer_riesz(
    big_q: &Poly<f64>,
    tol: &ToleranceConfig,
) -> Result<Poly<f64>, Bs1dError> {
    if big_q.is_zero() {
        return Err(Bs1dError::NotPositive { at: 0.0, value: 0.0 });
    }
    // Sign screen on a fixed grid over the interval.
    let grid = 1000usize;
    let mut scale = 0.0f64;
    let mut worst: Option<(f64, f64)> = None;
    for j in 0..grid {
        let x = -1.0 + 2.0 * j as f64 / (grid - 1) as f64;
        let v = big_q.eval(&x);
        scale = scale.max(v.abs());
        if worst.map_or(true, |(_, wv)| v < wv) {
            worst = Some((x, v));
        }
    }
    let (wx, wv) = worst.expect("grid is nonempty");
    if wv < -tol.rel_tol * scale.max(1e-300) {
        return Err(Bs1dError::NotPositive { at: wx, value: wv });
    }
    let n = big_q.deg() as usize;
    if n == 0 {
        let c = big_q.coeff(0);
        if c <= 0.0 {
            return Err(Bs1dError::NotPositive { at: 0.0, value: c });
        }
        return Ok(Poly::constant(c.sqrt()));
    }

    // Lift to the circle and classify the 2n roots.
    let lifted = cheb_pullback_poly(big_q);
    let roots = poly_roots(&lifted.coeffs().to_vec())
        .map_err(|e| Bs1dError::Numerical(format!("root finding failed: {e:?}")))?;
    let band = tol.root_pair_tol.max(1e-9);
    let boundary_band = (band * 1e2).max(1e-6);
    let mut outside: Vec<C64> = Vec::new();
    let mut inside: Vec<C64> = Vec::new();
    let mut near_plus = 0usize;
    let mut near_minus = 0usize;
    for r in roots {
        let d = r.norm() - 1.0;
        if d.abs() <= band || (r - C64::new(1.0, 0.0)).norm() <= boundary_band
            || (r + C64::new(1.0, 0.0)).norm() <= boundary_band
        {
            if (r - C64::new(1.0, 0.0)).norm() <= boundary_band {
                near_plus += 1;
            } else if (r + C64::new(1.0, 0.0)).norm() <= boundary_band {
                near_minus += 1;
            } else {
                return Err(Bs1dError::InteriorUnitRoot { re: r.re, im: r.im });
            }
        } else if d > 0.0 {
            outside.push(r);
        } else {
            inside.push(r);
        }
    }
    if near_plus % 2 != 0 {
        return Err(Bs1dError::UnpairedRoots { re: 1.0, im: 0.0 });
    }
    if near_minus % 2 != 0 {
        return Err(Bs1dError::UnpairedRoots { re: -1.0, im: 0.0 });
    }
    let nu_plus = near_plus / 2;
    let nu_minus = near_minus / 2;
    if nu_plus > 1 || nu_minus > 1 {
        return Err(Bs1dError::NotStable {
            reason: "boundary zero of the denominator is too deep",
        });
    }
    // Every outside root must mirror an inside root at its inverse.
    let mut pool = inside;
    for r in &outside {
        let inv = C64::new(1.0, 0.0) / r;
        let mut best: Option<(usize, f64)> = None;
        for (i, cand) in pool.iter().enumerate() {
            let d = (cand - inv).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        match best {
            Some((i, d)) if d <= (band * 1e3).max(1e-6) * inv.norm().max(1.0) => {
                pool.swap_remove(i);
            }
            _ => {
                return Err(Bs1dError::UnpairedRoots { re: r.re, im: r.im });
            }
        }
    }
    if !pool.is_empty() || outside.len() + nu_plus + nu_minus != n {
        let stray = pool.first().copied().unwrap_or(C64::new(0.0, 0.0));
        return Err(Bs1dError::UnpairedRoots { re: stray.re, im: stray.im });
    }

    // Assemble a real monic polynomial from the outside roots.
    let mut factor = Poly::<f64>::one();
    let mut pending: Vec<C64> = outside;
    while let Some(r) = pending.pop() {
        if r.im.abs() <= band * r.norm().max(1.0) {
            factor = &factor * &Poly::new(vec![-r.re, 1.0]);
        } else {
            let mate = conj_partner(&mut pending, r, (band * 1e3).max(1e-6))
                .ok_or(Bs1dError::UnpairedRoots { re: r.re, im: r.im })?;
            let re2 = r.re + mate.re;
            let sq = (r * mate).re;
            factor = &factor * &Poly::new(vec![sq, -re2, 1.0]);
        }
    }
    if nu_plus == 1 {
        factor = &factor * &Poly::new(vec![1.0, -1.0]);
    }
    if nu_minus == 1 {
        factor = &factor * &Poly::new(vec![1.0, 1.0]);
    }

    // Fix the scale so q(z) q(1/z) = Q(x), then the sign so q(0) > 0.
    let mut q = factor;
    let mut fixed = false;
    for z0 in [1.73, 1.91, 2.37, 3.11] {
        let x0 = 0.5 * (z0 + 1.0 / z0);
        let denom = q.eval(&z0) * q.eval(&(1.0 / z0));
        let num = big_q.eval(&x0);
        if denom.abs() > 1e-12 && num.abs() > 1e-300 {
            let t = num / denom;
            if t <= 0.0 {
                return Err(Bs1dError::Numerical(
                    "factorization scale came out nonpositive".into(),
                ));
            }
            q = q.scale(&t.sqrt());
            fixed = true;
            break;
        }
    }
    if !fixed {
        return Err(Bs1dError::Numerical(
            "could not normalize the factorization scale".into(),
        ));
    }
    if q.coeff(0) < 0.0 {
        q = q.scale(&-1.0);
    }

    // Residual check against the original denominator.
    let mut residual = 0.0f64;
    for j in 0..64 {
        let theta = std::f64::consts::PI * (j as f64 + 0.5) / 64.0;
        let z = C64::new(theta.cos(), theta.sin());
        let qc = numerics::eval_complex(q.coeffs(), z);
        let got = qc.norm_sqr();
        let want = big_q.eval(&theta.cos());
        residual = residual.max((got - want).abs());
    }
    if residual > 1e-6 * scale.max(1.0) {
        return Err(Bs1dError::Numerical(format!(
            "factorization residual {residual:.3e} exceeds tolerance"
        )));
    }
    Ok(q)
}
