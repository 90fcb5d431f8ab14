//! Spectral factorization of a symmetric matrix polynomial weight W(x),
//! positive definite on (−1, 1): find Ψ(z), invertible in the open unit
//! disk, with W((z + 1/z)/2) = Ψ(1/z)ᵗΨ(z), normalized so that Ψ(0) is
//! lower triangular with positive diagonal (which pins Ψ down uniquely).
//!
//! The factor is computed by Bauer's method: the banded block Toeplitz
//! matrix with symbol W((z + 1/z)/2) is Cholesky-factored row by row, and
//! the last band of the factor converges geometrically to the coefficients
//! of the reversed factor.

use crate::MatopError;
use nalgebra::{DMatrix, SymmetricEigen};
use numerics::{cholesky, Mat, ToleranceConfig};
use poly::MatPoly;
use std::collections::VecDeque;

fn symmetrize(m: &Mat<f64>) -> Mat<f64> {
    (&m.transpose() + m).scale(&0.5)
}

/// C(t, k) exactly in f64 (safe for the coefficient sizes handled here).
fn binomial(t: usize, k: usize) -> f64 {
    let k = k.min(t - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (t - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Fourier blocks of W((z + 1/z)/2): the coefficient of z^j is
/// Σ_{t ≥ j, t ≡ j (mod 2)} W_t · 2^{−t} · C(t, (t−j)/2).
fn fourier_blocks(w: &MatPoly<f64>) -> Vec<Mat<f64>> {
    let l = w.size();
    let d = w.deg().max(0) as usize;
    let mut c = vec![Mat::<f64>::zeros(l, l); d + 1];
    for (t, wt) in w.coeffs().iter().enumerate() {
        let pow = 0.5_f64.powi(t as i32);
        for j in (t % 2..=t).step_by(2) {
            let weight = pow * binomial(t, (t - j) / 2);
            c[j] = &c[j] + &wt.scale(&weight);
        }
    }
    c
}

fn min_eigenvalue(m: &Mat<f64>) -> f64 {
    let l = m.nrows();
    let dm = DMatrix::from_fn(l, l, |i, j| m[(i, j)]);
    let eig = SymmetricEigen::new(dm);
    eig.eigenvalues.iter().fold(f64::INFINITY, |a, e| a.min(*e))
}

/// Left-multiply by the orthogonal matrix that turns `a` lower triangular
/// with positive diagonal; returns that orthogonal matrix. Uses the flipped
/// QR factorization: with J the antidiagonal flip and JaJ = QR (R with
/// positive diagonal), U = (JQJ)ᵗ gives Ua = JRJ.
fn lower_normalizer(a: &Mat<f64>) -> Result<Mat<f64>, MatopError> {
    let l = a.nrows();
    let flip = |m: &Mat<f64>| Mat::from_fn(l, l, |i, j| m[(l - 1 - i, l - 1 - j)]);
    let b = flip(a);
    // Modified Gram–Schmidt on the columns of b, diag(R) kept positive.
    let mut q = vec![vec![0.0_f64; l]; l];
    for j in 0..l {
        let mut col: Vec<f64> = (0..l).map(|i| b[(i, j)]).collect();
        for qi in q.iter().take(j) {
            let dot: f64 = col.iter().zip(qi).map(|(a, b)| a * b).sum();
            for (c, qv) in col.iter_mut().zip(qi) {
                *c -= dot * qv;
            }
        }
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 1e-14 {
            return Err(MatopError::Numerical(
                "the constant term of the factor is numerically singular".into(),
            ));
        }
        for c in &mut col {
            *c /= norm;
        }
        q[j] = col;
    }
    let qmat = Mat::from_fn(l, l, |i, j| q[j][i]);
    let qflip = flip(&qmat);
    Ok(qflip.transpose())
}

/// Read L[row][col] out of the sliding window of factor rows.
fn window_block(
    window: &VecDeque<Vec<Mat<f64>>>,
    first_row: usize,
    row: usize,
    col: usize,
    bw: usize,
) -> Mat<f64> {
    let blocks = &window[row - first_row];
    blocks[col - row.saturating_sub(bw)].clone()
}

/// Factor a symmetric weight, positive definite on (−1, 1), into its
/// normalized stable spectral factor.
pub fn matrix_fejer_riesz(
    w: &MatPoly<f64>,
    cfg: &ToleranceConfig,
) -> Result<MatPoly<f64>, MatopError> {
    let l = w.size();
    let scale = w.coeffs().iter().map(Mat::max_abs).fold(0.0, f64::max);
    if scale <= 0.0 {
        return Err(MatopError::Numerical("the weight is identically zero".into()));
    }
    for (k, c) in w.coeffs().iter().enumerate() {
        if c.max_abs_diff(&c.transpose()) > 1e-10 * scale {
            return Err(MatopError::Numerical(format!(
                "coefficient {k} of the weight is not symmetric"
            )));
        }
    }
    let w = MatPoly::new(l, w.coeffs().iter().map(symmetrize).collect());

    // Positivity screen on a fixed interior grid.
    for i in 0..500 {
        let x = (std::f64::consts::PI * (2.0 * i as f64 + 1.0) / 1000.0).cos();
        let eig = min_eigenvalue(&w.eval(&x));
        if eig <= 0.0 {
            return Err(MatopError::NotPositiveOnGrid {
                at: x,
                eigenvalue: eig,
            });
        }
    }

    let c = fourier_blocks(&w);
    let bw = c.len() - 1;
    let fail = |msg: String| MatopError::Numerical(msg);

    // Bauer iteration with doubling checkpoints on the last band.
    let mut window: VecDeque<Vec<Mat<f64>>> = VecDeque::new();
    let mut diag_inv_t: VecDeque<Mat<f64>> = VecDeque::new();
    let mut first_row = 0usize;
    let mut checkpoint = (8 * (bw + 1)).max(bw + 2);
    let mut previous_band: Option<Vec<Mat<f64>>> = None;
    let mut band: Vec<Mat<f64>> = Vec::new();
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut row = 0usize;
    let row_budget = (3_000_000 / l).max(1024);
    while row <= row_budget {
        let lo = row.saturating_sub(bw);
        let mut row_blocks: Vec<Mat<f64>> = Vec::with_capacity(row - lo + 1);
        for j in lo..=row {
            let mut v = c.get(row - j).cloned().unwrap_or_else(|| Mat::zeros(l, l));
            let kmin = lo.max(j.saturating_sub(bw));
            for k in kmin..j {
                let a = &row_blocks[k - lo];
                let b = if j == row {
                    row_blocks[k - lo].clone()
                } else {
                    window_block(&window, first_row, j, k, bw)
                };
                v = &v - &(a * &b.transpose());
            }
            if j < row {
                row_blocks.push(&v * &diag_inv_t[j - first_row]);
            } else {
                let lfac = cholesky(&symmetrize(&v)).map_err(|e| {
                    fail(format!("block Cholesky broke down at row {row}: {e}"))
                })?;
                let inv_t = lfac
                    .inverse()
                    .map_err(|e| fail(format!("diagonal inversion failed: {e}")))?
                    .transpose();
                row_blocks.push(lfac);
                diag_inv_t.push_back(inv_t);
            }
        }
        window.push_back(row_blocks);
        if window.len() > bw + 1 {
            window.pop_front();
            diag_inv_t.pop_front();
            first_row += 1;
        }

        if row + 1 == checkpoint && row >= bw {
            let current: Vec<Mat<f64>> = (0..=bw)
                .map(|k| window_block(&window, first_row, row, row - k, bw))
                .collect();
            if let Some(prev) = &previous_band {
                residual = current
                    .iter()
                    .zip(prev)
                    .map(|(a, b)| a.max_abs_diff(b))
                    .fold(0.0_f64, f64::max)
                    / scale.sqrt();
                if residual <= cfg.rel_tol {
                    band = current;
                    converged = true;
                    break;
                }
            }
            previous_band = Some(current);
            checkpoint *= 2;
        }
        row += 1;
    }
    if !converged {
        return Err(MatopError::NoConvergence { residual });
    }

    // The reversed last band gives the factor; normalize its constant term.
    let raw = MatPoly::new(l, band.iter().map(Mat::transpose).collect());
    let u = lower_normalizer(&raw.coeff(0))?;
    let normalized = MatPoly::new(
        l,
        raw.coeffs().iter().map(|g| &u * g).collect(),
    );

    // Certify the product against the Fourier blocks.
    let mut product_residual = 0.0_f64;
    for j in 0..=bw {
        let mut acc = Mat::<f64>::zeros(l, l);
        for a in 0..=bw - j {
            let ga = normalized.coeff(a);
            let gb = normalized.coeff(a + j);
            acc = &acc + &(&ga.transpose() * &gb);
        }
        product_residual = product_residual.max(acc.max_abs_diff(&c[j]) / scale);
    }
    if product_residual > 1e-6 {
        return Err(MatopError::NoConvergence {
            residual: product_residual,
        });
    }
    Ok(normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly::Poly;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn the_identity_weight_factors_as_the_identity() {
        let w = MatPoly::<f64>::identity(2);
        let psi = matrix_fejer_riesz(&w, &cfg()).unwrap();
        assert!(psi.max_abs_diff(&MatPoly::identity(2)) < 1e-12);
    }

    #[test]
    fn the_scalar_line_factors_cleanly() {
        // 5/4 − x = (1 − z/2)(1 − 1/(2z)) under x = (z + 1/z)/2.
        let w = MatPoly::from_entries(&[vec![Poly::new(vec![1.25, -1.0])]]);
        let psi = matrix_fejer_riesz(&w, &cfg()).unwrap();
        let want = MatPoly::from_entries(&[vec![Poly::new(vec![1.0, -0.5])]]);
        assert!(psi.max_abs_diff(&want) < 1e-9, "{psi:?}");
    }

    #[test]
    fn an_indefinite_weight_is_caught_on_the_grid() {
        let row0 = vec![Poly::new(vec![1.0]), Poly::new(vec![2.0])];
        let row1 = vec![Poly::new(vec![2.0]), Poly::new(vec![1.0])];
        let w = MatPoly::from_entries(&[row0, row1]);
        match matrix_fejer_riesz(&w, &cfg()) {
            Err(MatopError::NotPositiveOnGrid { eigenvalue, .. }) => {
                assert!((eigenvalue - -1.0).abs() < 1e-9)
            }
            other => panic!("expected a grid failure, got {other:?}"),
        }
    }

    #[test]
    fn a_rotated_diagonal_weight_recovers_its_factor() {
        // Ψ* = O·diag(1 − z/2, 1 + z/3)·Oᵗ has Ψ*(0) = I, so it is the
        // normalized factor of its own weight.
        let (c, s) = (0.6_f64, 0.8_f64);
        let o = Mat::from_rows(vec![vec![c, -s], vec![s, c]]);
        let d0 = Mat::identity(2);
        let d1 = Mat::from_rows(vec![vec![-0.5, 0.0], vec![0.0, 1.0 / 3.0]]);
        let psi_star = MatPoly::new(
            2,
            vec![&(&o * &d0) * &o.transpose(), &(&o * &d1) * &o.transpose()],
        );
        let w = crate::weight::weight_from_psi(&psi_star, &cfg()).unwrap();
        let psi = matrix_fejer_riesz(&w, &cfg()).unwrap();
        assert!(
            psi.max_abs_diff(&psi_star) < 1e-9,
            "difference {}",
            psi.max_abs_diff(&psi_star)
        );
    }
}
