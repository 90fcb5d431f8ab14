//! From Ψ̂ back to the measure side: the matrix weight
//! W((z + 1/z)/2) = Ψ̂(1/z)ᵗΨ̂(z), the canonical point mass carried by a
//! simple zero inside the disk, and the reassembled moment functional
//! (absolutely continuous part plus atoms).

use crate::functional::MatFunctional;
use crate::zeros::{kernel_at, poly_scale, psi_zero_analysis, PsiZero};
use crate::MatopError;
use numerics::{Mat, QuadratureRule, Scalar, ToleranceConfig};
use poly::{symmetric_laurent_to_poly, Laurent, MatPoly, Poly};

/// The canonical weight attached to one simple zero of Ψ̂ strictly inside
/// the unit disk.
#[derive(Debug, Clone)]
pub struct CanonicalMass {
    /// The zero z₀ of Ψ̂, with 0 < |z₀| < 1.
    pub z0: f64,
    /// The carrier x₀ = (z₀ + 1/z₀)/2, with |x₀| > 1.
    pub x0: f64,
    /// Orthogonal projection onto ker Ψ̂(z₀).
    pub e0: Mat<f64>,
    /// The mass matrix ρ₀ = E₀L₀⁻¹: positive semidefinite with range equal
    /// to the kernel.
    pub rho: Mat<f64>,
    /// Residual of the residue identity tying ρ₀ to the inverse of Ψ̂ at z₀
    /// (zero in exact arithmetic).
    pub consistency_residual: f64,
}

fn symmetrize_f64(m: &Mat<f64>) -> Mat<f64> {
    (&m.transpose() + m).scale(&0.5)
}

/// Expand Ψ̂(1/z)ᵗΨ̂(z) and read it off as a matrix polynomial in
/// x = (z + 1/z)/2. Errors if the product fails to be a function of x,
/// which happens exactly when Ψ̂ does not factor a symmetric weight.
pub fn weight_from_psi<T: Scalar>(
    psi: &MatPoly<T>,
    cfg: &ToleranceConfig,
) -> Result<MatPoly<T>, MatopError> {
    let l = psi.size();
    let half = T::from_ratio(1, 2);
    let mut entries: Vec<Vec<Poly<T>>> = vec![vec![Poly::zero(); l]; l];
    let mut scale = 0.0_f64;
    let mut defect = 0.0_f64;
    let mut symmetrized: Vec<Vec<Laurent<T>>> = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(l);
        for j in 0..l {
            let mut acc = Laurent::zero();
            for k in 0..l {
                let a = Laurent::from_poly(&psi.entry(k, i), 0).invert_var();
                let b = Laurent::from_poly(&psi.entry(k, j), 0);
                acc = &acc + &(&a * &b);
            }
            if acc.is_zero() {
                row.push(Laurent::zero());
                continue;
            }
            let m = acc.max_exp().abs().max(acc.min_exp().abs());
            let mut coeffs = Vec::with_capacity((2 * m + 1) as usize);
            for e in -m..=m {
                let plus = acc.coeff(e);
                let minus = acc.coeff(-e);
                scale = scale.max(plus.mag());
                defect = defect.max((plus.clone() - minus.clone()).mag());
                coeffs.push((plus + minus) * half.clone());
            }
            row.push(Laurent::new(-m, coeffs));
        }
        symmetrized.push(row);
    }
    if defect > cfg.rel_tol * scale.max(1e-300) {
        return Err(MatopError::Numerical(format!(
            "the product is not a function of (z + 1/z)/2: asymmetry {defect:.3e} against scale {scale:.3e}"
        )));
    }
    for i in 0..l {
        for j in 0..l {
            entries[i][j] = symmetric_laurent_to_poly(&symmetrized[i][j])
                .expect("symmetrized by construction");
        }
    }
    Ok(MatPoly::from_entries(&entries))
}

/// The canonical mass at a verified simple zero strictly inside the disk.
pub fn canonical_weight(
    psi: &MatPoly<f64>,
    zero: &PsiZero,
    cfg: &ToleranceConfig,
) -> Result<CanonicalMass, MatopError> {
    let z0 = zero.z0;
    let edge = cfg.root_pair_tol.max(1e-9);
    if z0.abs() >= 1.0 - edge {
        return Err(MatopError::NotASimpleZero {
            z0,
            reason: "the zero sits on the unit circle, where the weight stays integrable and no mass is assigned",
        });
    }
    if z0.abs() <= edge {
        return Err(MatopError::NotASimpleZero {
            z0,
            reason: "the zero sits at the origin, outside the admissible region",
        });
    }
    let l = psi.size();
    let scale = poly_scale(psi);
    let tau = scale * cfg.rel_tol.sqrt();
    let here = psi.eval(&z0);
    if zero.kernel.is_empty() || zero.kernel.iter().any(|v| v.len() != l) {
        return Err(MatopError::NotASimpleZero {
            z0,
            reason: "the supplied kernel basis is empty or has the wrong length",
        });
    }
    for v in &zero.kernel {
        let image = here.mul_vec(v);
        let norm = image.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm > 10.0 * tau {
            return Err(MatopError::NotASimpleZero {
                z0,
                reason: "the supplied kernel basis is not annihilated at the zero",
            });
        }
    }

    // Re-orthonormalize the kernel basis and form the projection E₀.
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(zero.kernel.len());
    for v in &zero.kernel {
        let mut w = v.clone();
        for b in &basis {
            let dot: f64 = w.iter().zip(b).map(|(a, c)| a * c).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= dot * bi;
            }
        }
        let norm = w.iter().map(|t| t * t).sum::<f64>().sqrt();
        if norm <= 1e-8 {
            return Err(MatopError::NotASimpleZero {
                z0,
                reason: "the supplied kernel basis is numerically dependent",
            });
        }
        for wi in &mut w {
            *wi /= norm;
        }
        basis.push(w);
    }
    let d = basis.len();
    let mut e0 = Mat::zeros(l, l);
    for b in &basis {
        for i in 0..l {
            for j in 0..l {
                e0[(i, j)] += b[i] * b[j];
            }
        }
    }
    let e0 = symmetrize_f64(&e0);
    let eye = Mat::<f64>::identity(l);

    // L₀ from the derivative pairing across the zero.
    let dpsi = psi.derivative();
    let zinv = 1.0 / z0;
    let spread = z0 - zinv;
    let core = &(&(&e0 * &psi.eval(&zinv).transpose()) * &dpsi.eval(&z0)) * &e0;
    let l0 = &(&eye - &e0) + &symmetrize_f64(&core).scale(&(z0 / (spread * spread)));
    if !numerics::is_positive_definite(&l0) {
        return Err(MatopError::NotASimpleZero {
            z0,
            reason: "the derivative pairing at the zero is not positive definite",
        });
    }
    let l0_inv = l0
        .inverse()
        .map_err(|e| MatopError::Numerical(format!("mass normalization failed: {e}")))?;
    let rho = symmetrize_f64(&(&e0 * &l0_inv));

    // Residue consistency: Ψ̂(1/z₀)ρ₀/(z₀ − 1/z₀) against the transposed
    // residue of Ψ̂⁻¹, built from the two kernels and the derivative.
    let left = kernel_at(&here.transpose(), scale, cfg);
    if left.len() != d {
        return Err(MatopError::NotASimpleZero {
            z0,
            reason: "the left and right kernels have different dimensions",
        });
    }
    let kmat = Mat::from_fn(l, d, |i, j| basis[j][i]);
    let ktilde = Mat::from_fn(l, d, |i, j| left[j][i]);
    let pairing = &(&ktilde.transpose() * &dpsi.eval(&z0)) * &kmat;
    let pairing_inv = pairing.inverse().map_err(|_| MatopError::NotASimpleZero {
        z0,
        reason: "the derivative pairing between the kernels is singular",
    })?;
    let residue = &(&kmat * &pairing_inv) * &ktilde.transpose();
    let lhs = (&psi.eval(&zinv) * &rho).scale(&(1.0 / spread));
    let rhs = residue.transpose().scale(&(spread / z0));
    let consistency_residual = lhs.max_abs_diff(&rhs) / scale.max(1.0);

    Ok(CanonicalMass {
        z0,
        x0: 0.5 * (z0 + zinv),
        e0,
        rho,
        consistency_residual,
    })
}

/// Rebuild the moment functional represented by Ψ̂ together with a list of
/// point masses: the absolutely continuous part integrates against the
/// inverse weight on (−1, 1), and each admissible zero of Ψ̂ inside the disk
/// must carry exactly its canonical mass.
pub fn functional_from_psi(
    psi: &MatPoly<f64>,
    masses: &[CanonicalMass],
    moment_count: usize,
    cfg: &ToleranceConfig,
) -> Result<MatFunctional<f64>, MatopError> {
    let l = psi.size();
    let zeros = psi_zero_analysis(psi, cfg)?;
    let edge = cfg.root_pair_tol.max(1e-9) * 10.0;
    let match_radius = cfg.root_pair_tol.max(1e-6) * 10.0;

    // Every interior zero needs a supplied mass; circle zeros are exempt.
    for z in &zeros {
        if z.z0.abs() >= 1.0 - edge {
            continue;
        }
        if !masses.iter().any(|m| (m.z0 - z.z0).abs() <= match_radius) {
            return Err(MatopError::InconsistentMasses {
                at: z.z0,
                residual: f64::INFINITY,
            });
        }
    }
    // Every supplied mass must sit at an interior zero and equal the
    // canonical one.
    let mass_tol = cfg.rel_tol.sqrt();
    for m in masses {
        let Some(z) = zeros
            .iter()
            .find(|z| (m.z0 - z.z0).abs() <= match_radius && z.z0.abs() < 1.0 - edge)
        else {
            return Err(MatopError::InconsistentMasses {
                at: m.z0,
                residual: f64::INFINITY,
            });
        };
        let canonical = canonical_weight(psi, z, cfg)?;
        let residual = m.rho.max_abs_diff(&canonical.rho)
            / canonical.rho.max_abs().max(1.0);
        if residual > mass_tol {
            return Err(MatopError::InconsistentMasses { at: m.z0, residual });
        }
    }

    let w = weight_from_psi(psi, cfg)?;
    let quad_tol = cfg.rel_tol.max(1e-13);
    let mut order = cfg.grid_start.max(moment_count + 2);
    let mut previous: Option<Vec<Mat<f64>>> = None;
    let mut last_residual = f64::INFINITY;
    for _ in 0..cfg.quad_doubling_limit {
        let rule = QuadratureRule::gauss_chebyshev_u(order);
        let mut sums = vec![Mat::<f64>::zeros(l, l); moment_count];
        for (node, weight) in rule.nodes.iter().zip(rule.weights.iter()) {
            let inv = w
                .eval(node)
                .inverse()
                .map_err(|e| MatopError::Numerical(format!("weight inversion failed: {e}")))?;
            let mut xp = 1.0;
            for s in sums.iter_mut() {
                *s = &*s + &inv.scale(&(weight * xp));
                xp *= node;
            }
        }
        if let Some(prev) = &previous {
            let scale = sums
                .iter()
                .map(Mat::max_abs)
                .fold(1.0_f64, f64::max);
            last_residual = sums
                .iter()
                .zip(prev)
                .map(|(a, b)| a.max_abs_diff(b))
                .fold(0.0_f64, f64::max)
                / scale;
            if last_residual <= quad_tol {
                previous = Some(sums);
                break;
            }
        }
        previous = Some(sums);
        order *= 2;
        if order > 4_000_000 {
            break;
        }
    }
    if last_residual > quad_tol.max(1e-11) * 100.0 {
        return Err(MatopError::NoConvergence {
            residual: last_residual,
        });
    }
    let mut moments = previous.expect("at least one pass ran");
    for m in masses {
        let mut xp = 1.0;
        for s in moments.iter_mut() {
            *s = &*s + &m.rho.scale(&xp);
            xp *= m.x0;
        }
    }
    let moments: Vec<Mat<f64>> = moments.iter().map(symmetrize_f64).collect();
    MatFunctional::new(moments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use numerics::rat;
    use poly::Poly;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn scalar_poly(coeffs: &[f64]) -> MatPoly<f64> {
        MatPoly::from_entries(&[vec![Poly::new(coeffs.to_vec())]])
    }

    #[test]
    fn the_weight_of_a_linear_factor_is_exact() {
        let psi = MatPoly::from_entries(&[vec![Poly::new(vec![rat(1, 1), rat(-3, 1)])]]);
        let w = weight_from_psi(&psi, &cfg()).unwrap();
        // (1 − 3/z)(1 − 3z) = 10 − 6x.
        assert_eq!(w.entry(0, 0), Poly::new(vec![rat(10, 1), rat(-6, 1)]));
    }

    #[test]
    fn an_asymmetric_product_is_rejected() {
        // [[1, z], [0, 1]] gives Ψ(1/z)ᵗΨ(z) with entries z and 1/z off the
        // diagonal: not a function of x.
        let one = Poly::new(vec![1.0]);
        let z = Poly::new(vec![0.0, 1.0]);
        let psi = MatPoly::from_entries(&[vec![one.clone(), z], vec![Poly::zero(), one]]);
        assert!(matches!(
            weight_from_psi(&psi, &cfg()),
            Err(MatopError::Numerical(_))
        ));
    }

    #[test]
    fn the_scalar_mass_comes_out_as_a_clean_fraction() {
        let psi = scalar_poly(&[1.0, -3.0]);
        let zeros = psi_zero_analysis(&psi, &cfg()).unwrap();
        let mass = canonical_weight(&psi, &zeros[0], &cfg()).unwrap();
        assert!((mass.x0 - 5.0 / 3.0).abs() < 1e-12);
        assert!((mass.rho[(0, 0)] - 8.0 / 9.0).abs() < 1e-12);
        assert!((mass.e0[(0, 0)] - 1.0).abs() < 1e-12);
        assert!(mass.consistency_residual < 1e-10);
    }

    #[test]
    fn circle_zeros_refuse_a_mass() {
        // 1 − z vanishes at z = 1 exactly on the circle.
        let psi = scalar_poly(&[1.0, -1.0]);
        let zeros = psi_zero_analysis(&psi, &cfg()).unwrap();
        assert_eq!(zeros.len(), 1);
        match canonical_weight(&psi, &zeros[0], &cfg()) {
            Err(MatopError::NotASimpleZero { reason, .. }) => {
                assert!(reason.contains("circle"))
            }
            other => panic!("expected a refusal, got {other:?}"),
        }
    }

    #[test]
    fn a_stable_scalar_symbol_reproduces_its_exact_moments() {
        // Ψ̂ = 3 − z has no zeros in the disk; the functional is purely
        // absolutely continuous and matches the exact scalar moments of the
        // matching unit-circle symbol 3 − w.
        let psi = scalar_poly(&[3.0, -1.0]);
        let f = functional_from_psi(&psi, &[], 5, &cfg()).unwrap();
        let q = Poly::new(vec![rat(3, 1), rat(-1, 1)]);
        let exact =
            bs1d::moments_from_q(&bs1d::StableFactor::from_symbol(&q).unwrap(), 5).unwrap();
        for (j, h) in exact.iter().enumerate() {
            let got = f.moment(j).unwrap()[(0, 0)];
            assert!(
                (got - numerics::Scalar::to_f64(h)).abs() < 1e-11,
                "moment {j}: {got} vs {}",
                numerics::Scalar::to_f64(h)
            );
        }
    }

    #[test]
    fn an_interior_zero_demands_its_mass() {
        let psi = scalar_poly(&[1.0, -3.0]);
        match functional_from_psi(&psi, &[], 3, &cfg()) {
            Err(MatopError::InconsistentMasses { at, residual }) => {
                assert!((at - 1.0 / 3.0).abs() < 1e-10);
                assert!(residual.is_infinite());
            }
            other => panic!("expected a missing-mass error, got {other:?}"),
        }
    }

    #[test]
    fn a_wrong_mass_is_rejected_with_a_finite_residual() {
        let psi = scalar_poly(&[1.0, -3.0]);
        let zeros = psi_zero_analysis(&psi, &cfg()).unwrap();
        let mut mass = canonical_weight(&psi, &zeros[0], &cfg()).unwrap();
        mass.rho = mass.rho.scale(&1.5);
        match functional_from_psi(&psi, &[mass], 3, &cfg()) {
            Err(MatopError::InconsistentMasses { residual, .. }) => {
                assert!(residual.is_finite() && residual > 0.1)
            }
            other => panic!("expected a mismatch error, got {other:?}"),
        }
    }

    #[test]
    fn mass_plus_tail_reproduce_the_atomic_measure_moments() {
        // Ψ̂ = 1 − 3z: same absolutely continuous part as the symbol 3 − w
        // (the two factors differ by z ↦ 1/z up to sign), plus the canonical
        // atom at x₀ = 5/3 with weight 8/9.
        let psi = scalar_poly(&[1.0, -3.0]);
        let zeros = psi_zero_analysis(&psi, &cfg()).unwrap();
        let mass = canonical_weight(&psi, &zeros[0], &cfg()).unwrap();
        let f = functional_from_psi(&psi, &[mass], 5, &cfg()).unwrap();
        let q = Poly::new(vec![rat(3, 1), rat(-1, 1)]);
        let exact =
            bs1d::moments_from_q(&bs1d::StableFactor::from_symbol(&q).unwrap(), 5).unwrap();
        let mut x0p = 1.0;
        for (j, h) in exact.iter().enumerate() {
            let want = numerics::Scalar::to_f64(h) + (8.0 / 9.0) * x0p;
            let got = f.moment(j).unwrap()[(0, 0)];
            assert!((got - want).abs() < 1e-10, "moment {j}: {got} vs {want}");
            x0p *= 5.0 / 3.0;
        }
    }
}
