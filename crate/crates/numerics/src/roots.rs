//! Root finding for real polynomials: balanced companion-matrix eigenvalues
//! followed by one Newton polish step.

use nalgebra::{Complex, DMatrix};
use std::fmt;

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq)]
pub enum RootsError {
    /// Degree-zero (or empty) input has no roots to return.
    DegreeZero,
}

impl fmt::Display for RootsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootsError::DegreeZero => write!(f, "polynomial has degree zero"),
        }
    }
}

impl std::error::Error for RootsError {}

/// Evaluate p (ascending coefficients) at a complex point by Horner.
pub fn eval_complex(coeffs: &[f64], z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + C64::new(c, 0.0);
    }
    acc
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// Parlett–Reinsch balancing: diagonal similarity with powers of 2 so that
/// row and column norms roughly agree. Exact in floating point (powers of 2
/// rescale without rounding), and markedly improves companion eigenvalues
/// for badly scaled coefficients.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s && f != 1.0 {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= ginv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// All complex roots (with multiplicity) of the real polynomial given by
/// ascending coefficients. Exact zero leading/trailing coefficients are
/// trimmed; zero roots from trailing zeros are returned explicitly.
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<C64>, RootsError> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Err(RootsError::DegreeZero);
    }
    // Factor out exact zero roots at the origin.
    let mut zero_roots = 0usize;
    while c.first() == Some(&0.0) {
        c.remove(0);
        zero_roots += 1;
    }
    let mut roots: Vec<C64> = vec![C64::new(0.0, 0.0); zero_roots];
    if c.len() > 1 {
        let n = c.len() - 1;
        let lead = c[n];
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -c[i] / lead;
        }
        balance(&mut companion);
        let eigs = companion.complex_eigenvalues();
        let dp = derivative(&c);
        for &e in eigs.iter() {
            // One Newton polish step, guarded against a vanishing derivative
            // (e.g. at a multiple root the raw eigenvalue is kept).
            let num = eval_complex(&c, e);
            let den = eval_complex(&dp, e);
            let polished = if den.norm() > 1e-12 * (1.0 + num.norm()) {
                let step = num / den;
                if step.norm() < 0.5 * (1.0 + e.norm()) {
                    e - step
                } else {
                    e
                }
            } else {
                e
            };
            // Keep the polish only if it did not make things worse.
            let better = if eval_complex(&c, polished).norm() <= eval_complex(&c, e).norm() {
                polished
            } else {
                e
            };
            roots.push(better);
        }
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

/// Residual bound check: max |p(r)| over returned roots, normalized by the
/// coefficient norm. Used by tests and by stability screens.
pub fn roots_residual(coeffs: &[f64], roots: &[C64]) -> f64 {
    let norm: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
    roots
        .iter()
        .map(|&r| eval_complex(coeffs, r).norm() / norm)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_with_imaginary_pair() {
        // w² + 2 = 0 → ±i√2.
        let roots = poly_roots(&[2.0, 0.0, 1.0]).unwrap();
        assert_eq!(roots.len(), 2);
        let s2 = 2.0_f64.sqrt();
        let mut ims: Vec<f64> = roots.iter().map(|r| r.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + s2).abs() < 1e-12);
        assert!((ims[1] - s2).abs() < 1e-12);
        assert!(roots.iter().all(|r| r.re.abs() < 1e-12));
    }

    #[test]
    fn clustered_triple_root() {
        // (1/105)(7/2 − z)³(32/7 − z): triple root at 3.5, simple at 32/7.
        let a = 3.5_f64;
        let b = 32.0 / 7.0;
        // Expand (a−z)³(b−z)/105 ascending in z.
        let cubic = [a * a * a, -3.0 * a * a, 3.0 * a, -1.0];
        let mut coeffs = [0.0_f64; 5];
        for (i, &c) in cubic.iter().enumerate() {
            coeffs[i] += c * b / 105.0;
            coeffs[i + 1] -= c / 105.0;
        }
        let roots = poly_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 4);
        let near_a = roots.iter().filter(|r| (*r - C64::new(a, 0.0)).norm() < 1e-3).count();
        let near_b = roots.iter().filter(|r| (*r - C64::new(b, 0.0)).norm() < 1e-6).count();
        assert_eq!(near_a, 3, "triple root cluster at 7/2: {roots:?}");
        assert_eq!(near_b, 1, "simple root at 32/7: {roots:?}");
    }

    #[test]
    fn degree_zero_rejected() {
        assert_eq!(poly_roots(&[5.0]), Err(RootsError::DegreeZero));
        assert_eq!(poly_roots(&[]), Err(RootsError::DegreeZero));
    }

    #[test]
    fn zero_roots_from_trailing_constant() {
        // z²(z − 1): roots {0, 0, 1}.
        let roots = poly_roots(&[0.0, 0.0, -1.0, 1.0]).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
        assert!(roots.iter().any(|r| (*r - C64::new(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn residuals_are_small_after_polish() {
        let coeffs = [0.5, -1.25, 0.0, 2.0, -0.75, 1.0];
        let roots = poly_roots(&coeffs).unwrap();
        assert!(roots_residual(&coeffs, &roots) < 1e-12);
    }
}
