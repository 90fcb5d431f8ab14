//! Float nullspace extraction with an explicit singular-value gap rule.
//! (Exact mode uses `Mat::kernel_exact` instead.)

use crate::mat::Mat;
use crate::tol::ToleranceConfig;
use nalgebra::DMatrix;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum NullspaceError {
    /// The singular spectrum has no clear gap at the tolerance cut, so the
    /// kernel dimension cannot be decided. Tighten tolerances or move to
    /// rational mode.
    AmbiguousRank { singular_values: Vec<f64> },
}

impl fmt::Display for NullspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NullspaceError::AmbiguousRank { singular_values } => {
                write!(f, "no clear singular-value gap: {singular_values:?}")
            }
        }
    }
}

impl std::error::Error for NullspaceError {}

/// Orthonormal basis of {v : ‖Mv‖ ≤ rel_tol·‖M‖‖v‖}, one `Vec<f64>` per
/// basis vector; empty when the kernel is trivial. The rank cut must be a
/// gap of ratio ≥ cfg.sv_gap, otherwise `AmbiguousRank`.
pub fn nullspace(m: &Mat<f64>, cfg: &ToleranceConfig) -> Result<Vec<Vec<f64>>, NullspaceError> {
    let (rows, cols) = (m.nrows(), m.ncols());
    // Pad with zero rows when wide so the SVD carries a full right basis.
    let padded_rows = rows.max(cols);
    let a = DMatrix::<f64>::from_fn(padded_rows, cols, |i, j| if i < rows { m[(i, j)] } else { 0.0 });
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // nalgebra does not guarantee ordering; recover the permutation.
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
    });

    let smax = sv.first().copied().unwrap_or(0.0);
    if smax <= cfg.abs_tol {
        // Zero matrix: the whole space is the kernel.
        return Ok((0..cols)
            .map(|j| (0..cols).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
            .collect());
    }
    let cut = cfg.rel_tol * smax;
    let kept = sv.iter().filter(|&&s| s > cut).count();
    if kept < sv.len() {
        // Demand a clean gap between the last kept and the first dropped.
        let hi = sv[kept - 1];
        let lo = sv[kept];
        if lo > 0.0 && hi / lo < cfg.sv_gap {
            return Err(NullspaceError::AmbiguousRank {
                singular_values: sv,
            });
        }
    }
    let mut basis = Vec::new();
    for &idx in order.iter().skip(kept) {
        basis.push((0..cols).map(|j| v_t[(idx, j)]).collect());
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_full_kernel() {
        let m = Mat::<f64>::zeros(2, 2);
        let cfg = ToleranceConfig::default();
        let basis = nullspace(&m, &cfg).unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn diagonal_rank_one_kernel() {
        let m = Mat::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        let cfg = ToleranceConfig::default();
        let basis = nullspace(&m, &cfg).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0][0].abs() < 1e-14);
        assert!((basis[0][1].abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn full_rank_trivial_kernel() {
        let m = Mat::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let cfg = ToleranceConfig::default();
        assert!(nullspace(&m, &cfg).unwrap().is_empty());
    }

    #[test]
    fn wide_matrix_kernel_dimension() {
        // 1×3 row: kernel dimension 2.
        let m = Mat::from_rows(vec![vec![1.0, 1.0, 1.0]]);
        let cfg = ToleranceConfig::default();
        let basis = nullspace(&m, &cfg).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot: f64 = v.iter().sum();
            assert!(dot.abs() < 1e-12);
        }
    }

    #[test]
    fn gapless_spectrum_is_ambiguous() {
        let mut cfg = ToleranceConfig::default();
        cfg.rel_tol = 1e-4;
        // Cut at 1e-4: the values straddling the cut (2e-4 and 5e-5) differ
        // by a factor 4, far below the 10³ gap requirement.
        let m = Mat::from_rows(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 2e-4, 0.0],
            vec![0.0, 0.0, 5e-5],
        ]);
        match nullspace(&m, &cfg) {
            Err(NullspaceError::AmbiguousRank { .. }) => {}
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }
}
