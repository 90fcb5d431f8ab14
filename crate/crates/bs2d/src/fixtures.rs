//! Closed-form reference families used across tests and the command line.
//!
//! Two parametric weights with fully explicit data — moment tables,
//! orthonormal vector polynomials, weight factors, and (outside the
//! classical parameter range) the extension measures with their singular
//! parts.  They exercise every code path: reconstruction, certification,
//! forward quadrature, torus-factor recovery, and the half-plane maps.

use crate::table::MomentTable;
use numerics::{rat, Mat, Rat, Scalar};
use poly::{Bivar, Poly, VarPair};

/// Chebyshev polynomials of the second kind, by value.
pub fn cheb_u(k: i64, x: f64) -> f64 {
    if k < -1 {
        return -cheb_u(-k - 2, x);
    }
    if k == -1 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The bilinear-coupling family: torus factor `ω = (1 − c₁zw)/(1−c₁²)^¼`,
/// outer factor `q = 1 + c₂² − 2c₂x`, inner factor trivial.  Degrees
/// `(n, m) = (2, 1)`.  Classical range: `|c₁| < 1`, `−1 ≤ c₂ ≤ 1`; for
/// `|c₂| > 1` the functional extends with a line mass on `x = x₀` and,
/// when additionally `|c₁c₂| > 1`, a point mass at `(x₀, y₀)`.
pub mod bilinear {
    use super::*;

    /// Outer degree of the family.
    pub const N: usize = 2;
    /// Inner degree of the family.
    pub const M: usize = 1;

    /// The 5×3 mixed moment table `h[k][l] = L(x^k y^l)`.
    pub fn moment_table(c1: &Rat, c2: &Rat) -> MomentTable<Rat> {
        let one = Rat::one();
        let c1s = c1.clone() * c1.clone();
        let c2s = c2.clone() * c2.clone();
        let c12 = c1.clone() * c2.clone();
        // Recurring combinations.
        let a = c1s.clone() * c2s.clone() + one.clone(); // c₁²c₂² + 1
        let b = c2s.clone() + one.clone(); // c₂² + 1
        let c = c2s.clone() + rat(2, 1); // c₂² + 2
        let d = c1s.clone() * c2s.clone() + c1s.clone() + one.clone(); // c₁²c₂² + c₁² + 1
        // c₁²c₂⁴ + 3c₁²c₂² + 3c₁² + c₂² + 2
        let e = c1s.clone() * c2s.clone() * c2s.clone()
            + rat(3, 1) * c1s.clone() * c2s.clone()
            + rat(3, 1) * c1s.clone()
            + c2s.clone()
            + rat(2, 1);
        // c₂⁴ + 4c₂² + 5
        let g = c2s.clone() * c2s.clone() + rat(4, 1) * c2s.clone() + rat(5, 1);
        let h = vec![
            vec![one.clone(), c12.clone() / rat(2, 1), a / rat(4, 1)],
            vec![
                c2.clone() / rat(2, 1),
                c1.clone() * b.clone() / rat(4, 1),
                c2.clone() * d.clone() / rat(8, 1),
            ],
            vec![
                b.clone() / rat(4, 1),
                c12.clone() * c.clone() / rat(8, 1),
                b.clone() * d / rat(16, 1),
            ],
            vec![
                c2.clone() * c.clone() / rat(8, 1),
                c1.clone() * b.clone() * c.clone() / rat(16, 1),
                c2.clone() * e.clone() / rat(32, 1),
            ],
            vec![
                b.clone() * c / rat(16, 1),
                c12 * g / rat(32, 1),
                b * e / rat(64, 1),
            ],
        ];
        MomentTable::new(h)
    }

    /// The outer factor in its closed form `1 + c₂² − 2c₂x` (value 1 + c₂²
    /// at the origin; divide by that for the unit gauge).
    pub fn q_carrier(c2: &Rat) -> Poly<Rat> {
        let c2s = c2.clone() * c2.clone();
        Poly::new(vec![Rat::one() + c2s, rat(-2, 1) * c2.clone()])
    }

    /// The rational carrier of `p(x, w) = (1 − 2c₁xw + c₁²w²)/√(1−c₁²)`.
    pub fn p_carrier(c1: &Rat) -> Bivar<Rat> {
        let c1s = c1.clone() * c1.clone();
        Bivar::new(
            VarPair::XW,
            vec![
                vec![Rat::one(), Rat::zero(), c1s],
                vec![Rat::zero(), rat(-2, 1) * c1.clone()],
            ],
        )
    }

    /// `p² = p_scale · p_carrier²` in the unit gauge of `q`:
    /// `(1 + c₂²)/(1 − c₁²)`.
    pub fn p_scale_canonical(c1: &Rat, c2: &Rat) -> Rat {
        let c1s = c1.clone() * c1.clone();
        let c2s = c2.clone() * c2.clone();
        (Rat::one() + c2s) / (Rat::one() - c1s)
    }

    /// The torus factor carrier `1 − c₁zw` (true factor divides by
    /// `(1−c₁²)^¼`).
    pub fn omega_carrier(c1: &Rat) -> Bivar<Rat> {
        Bivar::new(
            VarPair::ZW,
            vec![vec![Rat::one()], vec![Rat::zero(), -c1.clone()]],
        )
    }

    /// The mirrored one-sided carrier
    /// `(1 − c₂z)(1 − 2c₁zy + c₁²z²)`, variables `(z, y)`; true factor
    /// divides by `√(1−c₁²)`.
    pub fn phat_carrier(c1: &Rat, c2: &Rat) -> Bivar<Rat> {
        let c1s = c1.clone() * c1.clone();
        Bivar::new(
            VarPair::ZY,
            vec![
                vec![Rat::one(), Rat::zero()],
                vec![-c2.clone(), rat(-2, 1) * c1.clone()],
                vec![c1s.clone(), rat(2, 1) * c1.clone() * c2.clone()],
                vec![-(c1s * c2.clone()), Rat::zero()],
            ],
        )
    }

    /// Orthonormal vector polynomials of outer degrees 0, 1, 2 (inner
    /// block size 2), by value.
    pub fn vector_poly(k: usize, c1: f64, c2: f64, x: f64, y: f64) -> Vec<f64> {
        let s = (1.0 - c1 * c1).sqrt();
        match k {
            0 => vec![1.0, 2.0 * y - c1 * c2],
            1 => vec![
                (2.0 * x - 2.0 * c1 * y + c1 * c1 * c2 - c2) / s,
                4.0 * x * y - 2.0 * c2 * y - c1,
            ],
            2 => vec![
                (4.0 * x * x - 4.0 * c1 * x * y - 2.0 * c2 * x + 2.0 * c1 * c2 * y + c1 * c1
                    - 1.0)
                    / s,
                8.0 * x * x * y - 4.0 * c2 * x * y - 2.0 * c1 * x - 2.0 * y + c1 * c2,
            ],
            _ => panic!("closed forms available for k ≤ 2"),
        }
    }

    /// Determinant of the reversed symbol at level 2: `2(1 − c₂z)²/√(1−c₁²)`.
    pub fn psi_det(c1: f64, c2: f64, z: f64) -> f64 {
        2.0 * (1.0 - c2 * z) * (1.0 - c2 * z) / (1.0 - c1 * c1).sqrt()
    }

    /// Entry `k` of the orthonormal vector polynomial of outer degree `nn`
    /// and block size `mm + 1`, from the product construction (valid for
    /// `nn ≥ 2`, `mm ≥ 1`; also reproduces the `nn = mm = 1` case).
    pub fn product_basis_entry(
        nn: i64,
        mm: i64,
        k: usize,
        c1: f64,
        c2: f64,
        x: f64,
        y: f64,
    ) -> f64 {
        let s = (1.0 - c1 * c1).sqrt();
        if (k as i64) < mm {
            let phat_n = cheb_u(nn, x) - (c2 + 2.0 * c1 * y) * cheb_u(nn - 1, x)
                + c1 * (c1 + 2.0 * c2 * y) * cheb_u(nn - 2, x)
                - c1 * c1 * c2 * cheb_u(nn - 3, x);
            phat_n / s * cheb_u(k as i64, y)
        } else {
            cheb_u(nn, x) * cheb_u(mm, y) - c2 * cheb_u(nn - 1, x) * cheb_u(mm, y)
                - c1 * cheb_u(nn - 1, x) * cheb_u(mm - 1, y)
                + c1 * c2 * cheb_u(nn - 2, x) * cheb_u(mm - 1, y)
        }
    }

    /// The carrier line `x₀ = (c₂ + 1/c₂)/2` supporting the singular part
    /// when `|c₂| > 1`.
    pub fn x0(c2: &Rat) -> Rat {
        (c2.clone() + c2.recip()) / rat(2, 1)
    }

    /// The atom ordinate `y₀ = (c₁c₂ + 1/(c₁c₂))/2` (requires `c₁c₂ ≠ 0`).
    pub fn y0(c1: &Rat, c2: &Rat) -> Rat {
        let c = c1.clone() * c2.clone();
        (c.clone() + c.recip()) / rat(2, 1)
    }

    /// Mass of the point atom at `(x₀, y₀)`: `(c₁²c₂² − 1)/(c₁²c₂²)`,
    /// present when `|c₁c₂| > 1`.
    pub fn point_mass(c1: &Rat, c2: &Rat) -> Rat {
        let c = c1.clone() * c1.clone() * c2.clone() * c2.clone();
        (c.clone() - Rat::one()) / c
    }

    /// The stable fiber symbol and scalar coefficient of the line mass on
    /// `x = x₀` (present when `|c₂| > 1`): the singular term is
    /// `coeff · (2/π) ∫ f(x₀, y) √(1−y²) / |r(w)|² dy`.
    pub fn line_mass(c1: &Rat, c2: &Rat) -> (Rat, Poly<Rat>) {
        let one = Rat::one();
        let c1s = c1.clone() * c1.clone();
        let c2s = c2.clone() * c2.clone();
        let base = (c2s.clone() - one.clone()) / c2s.clone() * (one.clone() - c1s);
        let inner = c1.clone() / c2.clone(); // root at c₂/c₁, always outside
        let f1 = Poly::new(vec![one.clone(), -inner]);
        let c12 = c1.clone() * c2.clone();
        let c12_sq = c12.clone() * c12.clone();
        if Scalar::to_f64(&c12_sq) > 1.0 {
            // Root 1/(c₁c₂) of the second factor lies inside the disk:
            // reflect it, which multiplies the squared modulus by (c₁c₂)².
            let f2 = Poly::new(vec![one, -c12.recip()]);
            (base / c12_sq, &f1 * &f2)
        } else {
            let f2 = Poly::new(vec![one, -c12]);
            (base, &f1 * &f2)
        }
    }
}

/// The one-sided family with `q = 1` and
/// `p(x, w) = (16(53 − 28x) + 225(c₀ + c₁x)w − 225w²)/(224√15)`.
/// Degrees `(n, m) = (1, 1)`.  Classical range: `|c₀ + c₁| ≤ 7/9` and
/// `|c₀ − c₁| ≤ 119/25`; in the opposite corner (both reversed, one
/// strictly) the fiber symbol has one real root inside the disk for every
/// `x`, and the extension carries a mass on the curve `y = y₁(x)`.
pub mod wquad {
    use super::*;

    /// Outer degree of the family.
    pub const N: usize = 1;
    /// Inner degree of the family.
    pub const M: usize = 1;

    /// The 3×3 mixed moment table `h[k][l] = L(x^k y^l)`.
    pub fn moment_table(c0: &Rat, c1: &Rat) -> MomentTable<Rat> {
        let quad = |a: Rat, b: Rat, c: Rat, d: Rat| -> Rat {
            a * c0.clone() * c0.clone() + b * c0.clone() * c1.clone() + c * c1.clone() * c1.clone()
                + d
        };
        let lin = |a: Rat, b: Rat| -> Rat { a * c0.clone() + b * c1.clone() };
        let h = vec![
            vec![
                Rat::one(),
                lin(rat(-1, 6), rat(-173, 2688)),
                quad(rat(13, 432), rat(731, 24192), rat(38509, 3096576), rat(1, 3)),
            ],
            vec![
                rat(113, 448),
                lin(rat(-173, 2688), rat(-70429, 1204224)),
                quad(
                    rat(731, 48384),
                    rat(38509, 1548288),
                    rat(85970699, 9710862336),
                    rat(2, 21),
                ),
            ],
            vec![
                rat(59809, 200704),
                lin(rat(-70429, 1204224), rat(-19352717, 539492352)),
                quad(
                    rat(38509, 3096576),
                    rat(85970699, 4855431168),
                    rat(33713900827, 4350466326528),
                    rat(61, 588),
                ),
            ],
        ];
        MomentTable::new(h)
    }

    /// The rational carrier of `p`: `16(53 − 28x) + 225(c₀ + c₁x)w − 225w²`.
    pub fn p_carrier(c0: &Rat, c1: &Rat) -> Bivar<Rat> {
        Bivar::new(
            VarPair::XW,
            vec![
                vec![rat(848, 1), rat(225, 1) * c0.clone(), rat(-225, 1)],
                vec![rat(-448, 1), rat(225, 1) * c1.clone(), Rat::zero()],
            ],
        )
    }

    /// `p² = p_scale · p_carrier²` with `p_scale = 1/(224²·15)`.
    pub fn p_scale() -> Rat {
        rat(1, 752640)
    }

    /// Whether the parameters lie in the classical (nonvanishing) box
    /// `|c₀ + c₁| ≤ 7/9`, `|c₀ − c₁| ≤ 119/25`.
    pub fn in_box(c0: &Rat, c1: &Rat) -> bool {
        let sum = Scalar::to_f64(&(c0.clone() + c1.clone())).abs();
        let diff = Scalar::to_f64(&(c0.clone() - c1.clone())).abs();
        sum <= 7.0 / 9.0 + 1e-15 && diff <= 119.0 / 25.0 + 1e-15
    }

    /// Whether the parameters lie in the extension corner
    /// `c₀ + c₁ ≥ 7/9`, `c₀ − c₁ ≥ 119/25` with at least one strict.
    pub fn in_extension_corner(c0: &Rat, c1: &Rat) -> bool {
        let sum = c0.clone() + c1.clone() - rat(7, 9);
        let diff = c0.clone() - c1.clone() - rat(119, 25);
        sum.signum_i32() >= 0
            && diff.signum_i32() >= 0
            && (sum.signum_i32() > 0 || diff.signum_i32() > 0)
    }

    fn d0(c0: f64, c1: f64) -> f64 {
        let t = 28.0 * c0 + 53.0 * c1;
        (t * t + 112896.0).sqrt()
    }

    fn d1(c0: f64, c1: f64) -> f64 {
        let t = 28.0 * c0 + 53.0 * c1;
        (t * t + 1382976.0).sqrt()
    }

    /// Orthonormal vector polynomials of outer degrees 0 and 1 (inner
    /// block size 2), by value.
    pub fn vector_poly(k: usize, c0: f64, c1: f64, x: f64, y: f64) -> Vec<f64> {
        let d0 = d0(c0, c1);
        let d1 = d1(c0, c1);
        let s15 = 15f64.sqrt();
        let t = 28.0 * c0 + 53.0 * c1;
        match k {
            0 => vec![
                1.0,
                3f64.sqrt() / (8.0 * d0) * (2688.0 * y + 448.0 * c0 + 173.0 * c1),
            ],
            1 => {
                let top = 112.0 * d0 * d0 * x + 30240.0 * t * y + t * (4249.0 * c0 + 449.0 * c1)
                    - 3189312.0;
                let bot = 896.0 * d1 * d1 * x * y
                    + 45.0 * (9408.0 * (448.0 * c0 + 173.0 * c1) - 5.0 * c1 * d0 * d0) * x
                    - 32.0 * (49.0 * d0 * d0 + 4.0 * d1 * d1) * y
                    - 45.0 * (5.0 * c0 * d0 * d0 + 2688.0 * (14.0 * c0 - 311.0 * c1));
                vec![top / (4.0 * s15 * d0 * d1), bot / (224.0 * s15 * d0 * d1)]
            }
            _ => panic!("closed forms available for k ≤ 1"),
        }
    }

    /// The first recurrence matrix in closed form.
    pub fn a11(c0: f64, c1: f64) -> Mat<f64> {
        let d0 = d0(c0, c1);
        let d1 = d1(c0, c1);
        let t = 28.0 * c0 + 53.0 * c1;
        Mat::from_rows(vec![
            vec![15f64.sqrt() * d1 / (28.0 * d0), 0.0],
            vec![3.0 * 5f64.sqrt() * t / (14.0 * d1), 252.0 * 5f64.sqrt() / d1],
        ])
    }

    /// `det D₁` of the monic family — the square of `15/112` for every
    /// parameter choice, which pins the reversed-symbol determinant at the
    /// origin to `28/15` exactly.
    pub fn monic_gram_det_level1() -> Rat {
        rat(225, 12544)
    }

    /// Roots `w₁(x) < 0 < w₂(x)` of the fiber symbol (extension corner).
    pub fn fiber_roots(c0: f64, c1: f64, x: f64) -> (f64, f64) {
        let lin = c0 + c1 * x;
        let disc = (64.0 / 225.0) * (53.0 - 28.0 * x) + lin * lin;
        let s = disc.sqrt();
        ((lin - s) / 2.0, (lin + s) / 2.0)
    }

    /// The curve ordinate `y₁(x) = (w₁ + 1/w₁)/2`.
    pub fn curve_ordinate(c0: f64, c1: f64, x: f64) -> f64 {
        let (w1, _) = fiber_roots(c0, c1, x);
        (w1 + 1.0 / w1) / 2.0
    }

    /// Density of the curve mass against `(2/π)√(1−x²) dx`:
    /// `(3136/15)·(1−w₁²)w₂ / ((53−28x)(1−w₁w₂)(w₂−w₁))`.
    pub fn curve_density(c0: f64, c1: f64, x: f64) -> f64 {
        let (w1, w2) = fiber_roots(c0, c1, x);
        3136.0 / 15.0 * (1.0 - w1 * w1) * w2
            / ((53.0 - 28.0 * x) * (1.0 - w1 * w2) * (w2 - w1))
    }
}
