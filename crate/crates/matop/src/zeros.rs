//! Location and classification of the singular points of Ψ̂ inside the
//! closed unit disk. A valid function is invertible there except at finitely
//! many real points, each a simple zero: the multiplicity of det Ψ̂ equals
//! the kernel dimension, and the Jost-style pairing of left and right
//! kernels against Ψ̂′ is nondegenerate.

use crate::MatopError;
use nalgebra::DMatrix;
use numerics::{poly_roots, Mat, ToleranceConfig};
use poly::MatPoly;

/// One singular point of Ψ̂ in the closed disk.
#[derive(Debug, Clone)]
pub struct PsiZero {
    /// The zero z₀ ∈ [−1, 0) ∪ (0, 1].
    pub z0: f64,
    /// The matching point x₀ = (z₀ + 1/z₀)/2 on the real line.
    pub x0: f64,
    /// Multiplicity of z₀ as a root of det Ψ̂ (equals the kernel dimension).
    pub multiplicity: usize,
    /// Orthonormal basis of ker Ψ̂(z₀), one vector per row.
    pub kernel: Vec<Vec<f64>>,
}

/// Largest coefficient magnitude across the blocks of a matrix polynomial.
pub(crate) fn poly_scale(m: &MatPoly<f64>) -> f64 {
    m.coeffs().iter().map(Mat::max_abs).fold(0.0, f64::max).max(1e-300)
}

/// Orthonormal basis of the numerical kernel of `m`, judged against an
/// external scale (the coefficient size of the polynomial the matrix came
/// from) rather than the matrix's own norm: a matrix evaluated at a zero is
/// small everywhere, and a self-relative cut would see full rank.
pub(crate) fn kernel_at(m: &Mat<f64>, scale: f64, cfg: &ToleranceConfig) -> Vec<Vec<f64>> {
    let l = m.nrows();
    let d = DMatrix::from_fn(l, l, |i, j| m[(i, j)]);
    let svd = d.svd(false, true);
    let tau = scale * cfg.rel_tol.sqrt();
    let vt = svd.v_t.expect("requested");
    let mut basis = Vec::new();
    for (i, sv) in svd.singular_values.iter().enumerate() {
        if *sv <= tau {
            basis.push(vt.row(i).iter().copied().collect::<Vec<f64>>());
        }
    }
    basis
}

/// Smallest singular value of a (possibly rectangular) matrix.
pub(crate) fn smallest_singular_value(m: &Mat<f64>) -> f64 {
    let d = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    let svd = d.svd(false, false);
    svd.singular_values.iter().fold(f64::INFINITY, |a, s| a.min(*s))
}

fn mat_from_rows(rows: &[Vec<f64>]) -> Mat<f64> {
    Mat::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
}

/// Find the zeros of Ψ̂ in the closed unit disk and verify each is a simple
/// real zero in the sense above. Zeros must lie on [−1, 0) ∪ (0, 1]; a
/// conjugate pair or an imaginary-axis root is reported as off-interval.
pub fn psi_zero_analysis(
    psi: &MatPoly<f64>,
    cfg: &ToleranceConfig,
) -> Result<Vec<PsiZero>, MatopError> {
    let det = psi.det_poly();
    let dscale = det
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut coeffs: Vec<f64> = det.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.abs() <= 1e-12 * dscale) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let roots = poly_roots(&coeffs)
        .map_err(|e| MatopError::Numerical(format!("root finder failed on det: {e}")))?;

    // Keep the roots in (a slightly fattened) closed disk. A numerically
    // split multiple root scatters by roughly ε^(1/m), so cluster in the
    // complex plane first and classify the cluster means: conjugate clouds
    // around a real point average back onto the axis to second order.
    let edge = 1.0 + cfg.root_pair_tol.max(1e-7) * 10.0;
    let cluster_radius = cfg.root_pair_tol.max(5e-4);
    let mut inside: Vec<(f64, f64)> = roots
        .iter()
        .filter(|r| (r.re * r.re + r.im * r.im).sqrt() <= edge)
        .map(|r| (r.re, r.im))
        .collect();
    inside.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut i = 0;
    while i < inside.len() {
        let mut j = i + 1;
        let mut mean_re = inside[i].0;
        let mut mean_im = inside[i].1;
        while j < inside.len() {
            let dr = inside[j].0 - mean_re;
            let di = inside[j].1 - mean_im;
            if (dr * dr + di * di).sqrt() > cluster_radius {
                break;
            }
            let n = (j - i + 1) as f64;
            mean_re += (inside[j].0 - mean_re) / n;
            mean_im += (inside[j].1 - mean_im) / n;
            j += 1;
        }
        if mean_im.abs() > cluster_radius || mean_re.abs() <= cluster_radius {
            return Err(MatopError::ZeroOffRealInterval {
                re: mean_re,
                im: mean_im,
            });
        }
        clusters.push((mean_re.clamp(-1.0, 1.0), j - i));
        i = j;
    }

    let scale = poly_scale(psi);
    let dpsi = psi.derivative();
    let mut out = Vec::with_capacity(clusters.len());
    for (z0, mult) in clusters {
        let here = psi.eval(&z0);
        let kernel = kernel_at(&here, scale, cfg);
        if kernel.len() != mult {
            return Err(MatopError::NonSimpleZero { z0 });
        }
        let left = kernel_at(&psi.eval(&z0).transpose(), scale, cfg);
        if left.len() != mult {
            return Err(MatopError::NonSimpleZero { z0 });
        }
        // Jost pairing: the left kernel against Ψ̂′ on the right kernel must
        // be nondegenerate, otherwise the zero is higher than first order.
        let k = mat_from_rows(&kernel).transpose();
        let ktilde = mat_from_rows(&left).transpose();
        let pairing = &(&ktilde.transpose() * &dpsi.eval(&z0)) * &k;
        if smallest_singular_value(&pairing) <= scale * cfg.rel_tol.sqrt() {
            return Err(MatopError::NonSimpleZero { z0 });
        }
        out.push(PsiZero {
            z0,
            x0: 0.5 * (z0 + 1.0 / z0),
            multiplicity: mult,
            kernel,
        });
    }
    Ok(out)
}
