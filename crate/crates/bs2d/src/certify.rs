//! Stability certification for reconstructed weights.
//!
//! A one-sided weight is classical when three conditions hold: the outer
//! factor `q` is positive on the open interval, every fiber symbol
//! `w ↦ p(x, w)` is zero-free on the closed unit disk for `x ∈ [−1, 1]`,
//! and the reversed matrix symbol has nonvanishing determinant on
//! `(−1, 1)`.  The fiber condition is decided rigorously: exact disk-zero
//! counts on a rational grid disprove it, and a positivity certificate for
//! the circle autocorrelation — obtained with rational interval arithmetic
//! over dyadic boxes — combined with one exact fiber count proves it.
//! Weights whose fiber symbol merely touches the circle land in the
//! undecidable gap and are reported as such rather than guessed.

use crate::Bs2dError;
use numerics::{poly_roots, rat, to_f64_vec, Rat, Scalar, ToleranceConfig};
use poly::{
    count_roots_open, gcd, symmetric_laurent_to_poly, Bivar, Laurent, MatPoly, Poly,
};

/// A located zero of a fiber symbol inside (or on) the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberZero {
    /// Abscissa of the offending fiber.
    pub x: f64,
    /// Real part of the zero.
    pub w_re: f64,
    /// Imaginary part of the zero.
    pub w_im: f64,
}

/// Outcome of the three-part stability check.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    /// Fiber symbols are zero-free on the closed unit disk for all
    /// abscissae in `[−1, 1]`.
    pub fiber_nonvanishing: bool,
    /// The determinant of the reversed symbol has no zeros on `(−1, 1)`
    /// (checked in floating point — the symbol itself is numeric).
    pub det_nonvanishing: bool,
    /// The outer factor is positive on the open interval.
    pub q_positive: bool,
    /// An offending disk zero, when `fiber_nonvanishing` is false.
    pub fiber_witness: Option<FiberZero>,
    /// A determinant zero in `(−1, 1)`, when `det_nonvanishing` is false.
    pub det_witness: Option<f64>,
    /// Number of dyadic boxes processed by the positivity certificate.
    pub boxes_checked: usize,
}

impl StabilityReport {
    /// All three conditions hold.
    pub fn is_stable(&self) -> bool {
        self.fiber_nonvanishing && self.det_nonvanishing && self.q_positive
    }
}

/// Number of zeros of `r` inside the open unit disk, counted with
/// multiplicity, by the Schur–Cohn sign recursion.  Returns `None` when a
/// recursion invariant degenerates, which happens exactly when the count
/// is not stable under perturbation (zeros on the circle, or a
/// self-inversive tail).
pub fn zeros_inside_disk(r: &Poly<Rat>) -> Option<usize> {
    assert!(!r.is_zero(), "zero polynomial has no zero count");
    // Zeros at the origin are inside; peel them off first so the
    // recursion starts from a nonzero constant term or a clean −δ step.
    let mut coeffs = r.coeffs().to_vec();
    let mut inside = 0usize;
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        inside += 1;
    }
    let mut f = Poly::new(coeffs);
    let mut formal_deg = f.deg();
    // Sign of the running product δ₁δ₂⋯δ_k; each negative product marks
    // one zero inside the disk.
    let mut product_sign = 1i32;
    while formal_deg >= 1 {
        let a0 = f.coeff(0);
        // The formal leading coefficient is zero when the actual degree
        // has dropped below the formal one.
        let lead = if f.deg() == formal_deg {
            f.lead()
        } else {
            Rat::zero()
        };
        let delta = a0.clone() * a0.clone() - lead.clone() * lead.clone();
        let ds = delta.signum_i32();
        if ds == 0 {
            return None;
        }
        product_sign *= ds;
        if product_sign < 0 {
            inside += 1;
        }
        // f ← a₀·f − lead·f*, where f* is the reversal at the formal
        // degree; the leading terms cancel so the formal degree drops by
        // exactly one.
        let mut rev = vec![Rat::zero(); (formal_deg + 1) as usize];
        for j in 0..=(formal_deg as usize) {
            rev[formal_deg as usize - j] = f.coeff(j);
        }
        let fstar = Poly::new(rev);
        f = &f.scale(&a0) - &fstar.scale(&lead);
        formal_deg -= 1;
        if f.is_zero() && formal_deg >= 1 {
            return None;
        }
    }
    Some(inside)
}

/// The circle autocorrelation of a fiber polynomial: the polynomial
/// `R(y)` with `R(cos θ) = |r(e^{iθ})|²`.
fn fiber_autocorrelation(r: &Poly<Rat>) -> Poly<Rat> {
    let d = r.deg();
    let rev = r.reverse();
    let prod = r * &rev;
    let laurent = Laurent::from_poly(&prod, -d);
    symmetric_laurent_to_poly(&laurent).expect("autocorrelation is palindromic")
}

/// The circle autocorrelation of the whole two-variable symbol:
/// `R(x, y)` with `R(x, cos θ) = |p(x, e^{iθ})|²`.
fn symbol_autocorrelation(p: &Bivar<Rat>) -> Result<Bivar<Rat>, Bs2dError> {
    let d = p.deg2();
    let rev = p.reverse_var2(d as usize);
    let prod = p * &rev;
    let mut rows = Vec::new();
    for i in 0..=prod.deg1() {
        let row = prod.row_poly(i as usize);
        let laurent = Laurent::from_poly(&row, -d);
        let collapsed = symmetric_laurent_to_poly(&laurent).ok_or(Bs2dError::Numerical(
            "autocorrelation rows must be palindromic".into(),
        ))?;
        rows.push(collapsed);
    }
    Ok(Bivar::from_rows(poly::VarPair::XY, rows))
}

/// Closed rational interval with outward-rounded arithmetic (exact, so no
/// rounding at all — the hull operations are sharp).
#[derive(Clone, Debug)]
struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(Scalar::to_f64(&lo) <= Scalar::to_f64(&hi));
        RatInterval { lo, hi }
    }

    fn point(v: Rat) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    fn add(&self, other: &Self) -> Self {
        RatInterval::new(
            self.lo.clone() + other.lo.clone(),
            self.hi.clone() + other.hi.clone(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        let candidates = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if (c.clone() - lo.clone()).signum_i32() < 0 {
                lo = c.clone();
            }
            if (c.clone() - hi.clone()).signum_i32() > 0 {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    fn width(&self) -> Rat {
        self.hi.clone() - self.lo.clone()
    }

    fn midpoint(&self) -> Rat {
        (self.lo.clone() + self.hi.clone()) / rat(2, 1)
    }
}

/// Interval Horner evaluation of a two-variable polynomial.
fn interval_eval(p: &Bivar<Rat>, xi: &RatInterval, yi: &RatInterval) -> RatInterval {
    let d1 = p.deg1().max(0) as usize;
    let mut acc = RatInterval::point(Rat::zero());
    for i in (0..=d1).rev() {
        let row = p.row_poly(i);
        // Horner in y with point coefficients.
        let mut rv = RatInterval::point(Rat::zero());
        for c in row.coeffs().iter().rev() {
            rv = rv.mul(yi).add(&RatInterval::point(c.clone()));
        }
        acc = acc.mul(xi).add(&rv);
    }
    acc
}

const BOX_BUDGET: usize = 200_000;

/// Certify `R > 0` on `[−1, 1]²` by dyadic subdivision.  Returns the
/// number of boxes processed, or the box that stayed undecidable.
fn certify_positive(r: &Bivar<Rat>) -> Result<usize, Bs2dError> {
    let min_width = rat(1, 1 << 24);
    let full = RatInterval::new(rat(-1, 1), rat(1, 1));
    let mut stack = vec![(full.clone(), full)];
    let mut processed = 0usize;
    while let Some((xi, yi)) = stack.pop() {
        processed += 1;
        if processed > BOX_BUDGET {
            return Err(undecided_box(&xi, &yi));
        }
        let value = interval_eval(r, &xi, &yi);
        if value.lo.signum_i32() > 0 {
            continue;
        }
        let wx = xi.width();
        let wy = yi.width();
        if (wx.clone() - min_width.clone()).signum_i32() < 0
            && (wy.clone() - min_width.clone()).signum_i32() < 0
        {
            return Err(undecided_box(&xi, &yi));
        }
        if (wx - wy).signum_i32() >= 0 {
            let m = xi.midpoint();
            stack.push((RatInterval::new(xi.lo.clone(), m.clone()), yi.clone()));
            stack.push((RatInterval::new(m, xi.hi.clone()), yi));
        } else {
            let m = yi.midpoint();
            stack.push((xi.clone(), RatInterval::new(yi.lo.clone(), m.clone())));
            stack.push((xi, RatInterval::new(m, yi.hi.clone())));
        }
    }
    Ok(processed)
}

fn undecided_box(xi: &RatInterval, yi: &RatInterval) -> Bs2dError {
    Bs2dError::Undecided {
        x_lo: Scalar::to_f64(&xi.lo),
        x_hi: Scalar::to_f64(&xi.hi),
        w_lo: Scalar::to_f64(&yi.lo),
        w_hi: Scalar::to_f64(&yi.hi),
    }
}

/// Locate a disk zero of the fiber at `x` numerically, for reporting.
fn locate_fiber_zero(fiber: &Poly<Rat>, x: &Rat) -> FiberZero {
    let xf = Scalar::to_f64(x);
    let coeffs = to_f64_vec(fiber.coeffs());
    if let Ok(roots) = poly_roots(&coeffs) {
        if let Some(best) = roots
            .iter()
            .filter(|r| r.norm() < 1.0 + 1e-9)
            .min_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
        {
            return FiberZero {
                x: xf,
                w_re: best.re,
                w_im: best.im,
            };
        }
    }
    FiberZero {
        x: xf,
        w_re: 0.0,
        w_im: 0.0,
    }
}

/// Whether the fiber symbol vanishes somewhere on the unit circle
/// (boundary included), decided exactly through the autocorrelation.
fn fiber_touches_circle(fiber: &Poly<Rat>) -> bool {
    let auto = fiber_autocorrelation(fiber);
    if auto.is_zero() {
        return true;
    }
    let one = Rat::one();
    count_roots_open(&auto, &(-one.clone()), &one) > 0
        || auto.eval(&one).is_zero()
        || auto.eval(&(-Rat::one())).is_zero()
}

/// Run the full three-part stability check on a reconstructed weight.
///
/// `q` is the outer factor, `p_prim` the integer-primitive carrier of the
/// inner factor in the `(x, w)` variables, and `psi` the reversed matrix
/// symbol of the associated vector family.  The fiber condition is decided
/// exactly; symbols that merely touch the unit circle exhaust the
/// subdivision budget and surface as [`Bs2dError::Undecided`].
pub fn stability_certificate(
    q: &Poly<Rat>,
    p_prim: &Bivar<Rat>,
    psi: &MatPoly<f64>,
    cfg: &ToleranceConfig,
) -> Result<StabilityReport, Bs2dError> {
    if p_prim.is_zero() {
        return Err(Bs2dError::Numerical("inner carrier must be nonzero".into()));
    }
    let one = Rat::one();

    // Outer factor: positive on the open interval.
    let q_positive = if q.is_zero() {
        false
    } else {
        count_roots_open(q, &(-one.clone()), &one) == 0
            && q.eval(&Rat::zero()).signum_i32() > 0
    };

    // Determinant of the reversed symbol: floating-point root scan.
    let det = psi.det_poly();
    let det_coeffs: Vec<f64> = det.coeffs().to_vec();
    let (det_nonvanishing, det_witness) = if det.is_zero() {
        (false, None)
    } else {
        let mut witness = None;
        if let Ok(roots) = poly_roots(&det_coeffs) {
            // A multiple real root may split into a conjugate pair under
            // coefficient noise, so allow a generous imaginary margin.
            let im_tol = (cfg.root_pair_tol * 100.0).max(1e-7);
            for r in roots {
                if r.im.abs() < im_tol && r.re.abs() < 1.0 - 1e-9 {
                    witness = Some(r.re);
                    break;
                }
            }
        }
        (witness.is_none(), witness)
    };

    // Fiber condition, stage 0: if every fiber shares a common x-factor
    // vanishing on [−1, 1], the symbol collapses on a whole fiber.
    let d2 = p_prim.deg2().max(0) as usize;
    let mut content = Poly::<Rat>::zero();
    for j in 0..=d2 {
        content = gcd(&content, &p_prim.col_poly(j));
    }
    if !content.is_zero()
        && (count_roots_open(&content, &(-one.clone()), &one) > 0
            || content.eval(&one).is_zero()
            || content.eval(&(-Rat::one())).is_zero())
    {
        let root = to_f64_vec(content.coeffs());
        let xw = poly_roots(&root)
            .ok()
            .and_then(|rs| {
                rs.into_iter()
                    .find(|r| r.im.abs() < 1e-9 && r.re.abs() <= 1.0 + 1e-9)
            })
            .map(|r| r.re)
            .unwrap_or(0.0);
        return Ok(StabilityReport {
            fiber_nonvanishing: false,
            det_nonvanishing,
            q_positive,
            fiber_witness: Some(FiberZero {
                x: xw,
                w_re: 0.0,
                w_im: 0.0,
            }),
            det_witness,
            boxes_checked: 0,
        });
    }

    // Stage 1: exact disk-zero counts on a rational grid.  Any interior
    // zero disproves the condition outright.
    for i in 0..=200i64 {
        let x = rat(i - 100, 100);
        let fiber = p_prim.eval_var1(&x);
        if fiber.is_zero() {
            return Ok(StabilityReport {
                fiber_nonvanishing: false,
                det_nonvanishing,
                q_positive,
                fiber_witness: Some(FiberZero {
                    x: Scalar::to_f64(&x),
                    w_re: 0.0,
                    w_im: 0.0,
                }),
                det_witness,
                boxes_checked: 0,
            });
        }
        match zeros_inside_disk(&fiber) {
            Some(0) => {}
            Some(_) => {
                return Ok(StabilityReport {
                    fiber_nonvanishing: false,
                    det_nonvanishing,
                    q_positive,
                    fiber_witness: Some(locate_fiber_zero(&fiber, &x)),
                    det_witness,
                    boxes_checked: 0,
                });
            }
            None => {
                // The count is unstable at this abscissa: either the
                // fiber touches the circle (undecidable boundary case) or
                // the recursion degenerated without circle zeros, in
                // which case a numeric count settles the grid point.
                if fiber_touches_circle(&fiber) {
                    return Err(Bs2dError::Undecided {
                        x_lo: Scalar::to_f64(&x),
                        x_hi: Scalar::to_f64(&x),
                        w_lo: -1.0,
                        w_hi: 1.0,
                    });
                }
                let coeffs = to_f64_vec(fiber.coeffs());
                if let Ok(roots) = poly_roots(&coeffs) {
                    if let Some(inner) = roots.iter().find(|r| r.norm() < 1.0 - 1e-6) {
                        return Ok(StabilityReport {
                            fiber_nonvanishing: false,
                            det_nonvanishing,
                            q_positive,
                            fiber_witness: Some(FiberZero {
                                x: Scalar::to_f64(&x),
                                w_re: inner.re,
                                w_im: inner.im,
                            }),
                            det_witness,
                            boxes_checked: 0,
                        });
                    }
                }
            }
        }
    }

    // Stage 2: prove the condition.  Positivity of the circle
    // autocorrelation on the square excludes circle zeros for every
    // abscissa; the disk-zero count is then constant along the connected
    // interval and the exact grid counts already pinned it to zero.
    let auto = symbol_autocorrelation(p_prim)?;
    let boxes_checked = certify_positive(&auto)?;

    Ok(StabilityReport {
        fiber_nonvanishing: true,
        det_nonvanishing,
        q_positive,
        fiber_witness: None,
        det_witness,
        boxes_checked,
    })
}
