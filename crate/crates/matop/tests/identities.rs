//! Cross-module identities for the matrix orthogonal polynomial machinery:
//! the confluent bracket identity, the z-plane symmetry of Ψ̂, exact and
//! floating-point flat-tail roundtrips, and the spectral factorization
//! roundtrip on randomly generated stable factors.

use matop::{
    canonical_weight, functional_from_psi, matrix_fejer_riesz, matrix_gram_schmidt, psi_hat,
    psi_zero_analysis, weight_from_psi, MatFunctional,
};
use numerics::{eval_complex, poly_roots, rat, Mat, Rat, Scalar, ToleranceConfig, C64};
use poly::{MatPoly, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn rotation(c: f64, s: f64) -> Mat<f64> {
    Mat::from_rows(vec![vec![c, -s], vec![s, c]])
}

/// O · diag(p₁, p₂) · Oᵗ as a matrix polynomial.
fn rotated_diag(o: &Mat<f64>, p1: &Poly<f64>, p2: &Poly<f64>) -> MatPoly<f64> {
    let deg = p1.deg().max(p2.deg()).max(0) as usize;
    let blocks: Vec<Mat<f64>> = (0..=deg)
        .map(|k| {
            let d = Mat::from_rows(vec![
                vec![p1.coeff(k), 0.0],
                vec![0.0, p2.coeff(k)],
            ]);
            &(o * &d) * &o.transpose()
        })
        .collect();
    MatPoly::new(2, blocks)
}

/// Product of linear factors ∏ (1 − a_k z); stable when |a_k| < 1.
fn factor_poly(roots: &[f64]) -> Poly<f64> {
    let mut p = Poly::new(vec![1.0]);
    for a in roots {
        p = &p * &Poly::new(vec![1.0, -a]);
    }
    p
}

fn eval_c(m: &MatPoly<f64>, z: C64) -> Vec<Vec<C64>> {
    let l = m.size();
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| eval_complex(m.entry(i, j).coeffs(), z))
                .collect()
        })
        .collect()
}

fn cmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let l = a.len();
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let mut acc = C64::new(0.0, 0.0);
                    for (k, bk) in b.iter().enumerate() {
                        acc += a[i][k] * bk[j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn ctranspose(a: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let l = a.len();
    (0..l).map(|i| (0..l).map(|j| a[j][i]).collect()).collect()
}

fn cmax_diff(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    let mut worst = 0.0_f64;
    for (ra, rb) in a.iter().zip(b) {
        for (va, vb) in ra.iter().zip(rb) {
            worst = worst.max((va - vb).norm());
        }
    }
    worst
}

/// A generic positive-definite matrix functional: the inverse-weight
/// measure of a stable rotated-diagonal factor, with no point masses.
fn generic_functional(count: usize) -> (MatPoly<f64>, MatFunctional<f64>) {
    let o = rotation(0.6, 0.8);
    let p1 = factor_poly(&[0.4, -0.3]);
    let p2 = factor_poly(&[0.2, 0.1]);
    let psi = rotated_diag(&o, &p1, &p2);
    let f = functional_from_psi(&psi, &[], count, &cfg()).unwrap();
    (psi, f)
}

#[test]
fn the_confluent_bracket_identity_holds_at_random_points() {
    let (_, f) = generic_functional(9);
    let fam = matrix_gram_schmidt(&f, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3usize {
        let a_n = fam.a_n(n);
        let dp_n = fam.p[n].derivative();
        let dp_prev = fam.p[n - 1].derivative();
        for _ in 0..20 {
            let x: f64 = rng.gen_range(-0.999..0.999);
            let term1 = &(&fam.p[n - 1].eval(&x).transpose() * &a_n) * &dp_n.eval(&x);
            let term2 =
                &(&fam.p[n].eval(&x).transpose() * &a_n.transpose()) * &dp_prev.eval(&x);
            let lhs = &term1 - &term2;
            let mut rhs = Mat::<f64>::zeros(2, 2);
            for p in fam.p.iter().take(n) {
                let v = p.eval(&x);
                rhs = &rhs + &(&v.transpose() * &v);
            }
            let scale = rhs.max_abs().max(1.0);
            assert!(
                lhs.max_abs_diff(&rhs) / scale < 1e-9,
                "level {n}, x = {x}: residual {}",
                lhs.max_abs_diff(&rhs) / scale
            );
        }
    }
}

#[test]
fn the_z_plane_symmetry_holds_on_the_circle() {
    let (_, f) = generic_functional(9);
    let fam = matrix_gram_schmidt(&f, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=3usize {
        let psi = psi_hat(&fam, n).unwrap();
        for _ in 0..20 {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = C64::new(theta.cos(), theta.sin());
            let zi = C64::new(1.0, 0.0) / z;
            let at_z = eval_c(&psi.mat, z);
            let at_zi = eval_c(&psi.mat, zi);
            let lhs = cmul(&ctranspose(&at_z), &at_zi);
            let rhs = cmul(&ctranspose(&at_zi), &at_z);
            let scale = lhs
                .iter()
                .flatten()
                .map(|v| v.norm())
                .fold(1.0_f64, f64::max);
            assert!(
                cmax_diff(&lhs, &rhs) / scale < 1e-10,
                "level {n}, θ = {theta}"
            );
        }
    }
}

#[test]
fn an_atomic_scalar_functional_is_exactly_flat_beyond_its_level() {
    // Moments of (2/π)√(1−x²)/(10−6x) dx plus the atom 8/9 at 5/3, all in
    // exact rationals. The tail of the recurrence must be exactly flat and
    // every level must reproduce the same z-plane function 1 − 3z.
    let sf = bs1d::StableFactor::from_symbol(&Poly::new(vec![rat(3, 1), rat(-1, 1)])).unwrap();
    let ac = bs1d::moments_from_q(&sf, 9).unwrap();
    let mut atom = rat(8, 9);
    let moments: Vec<Rat> = ac
        .iter()
        .map(|h| {
            let total = h.clone() + atom.clone();
            atom = atom.clone() * rat(5, 3);
            total
        })
        .collect();
    let f = MatFunctional::from_scalar_moments(&moments).unwrap();
    let fam = matrix_gram_schmidt(&f, 4).unwrap();
    let half = rat(1, 2);
    for n in 2..=4usize {
        assert_eq!(fam.a_n(n)[(0, 0)], half, "A_{n}");
    }
    for n in 1..=3usize {
        assert!(fam.b_n(n)[(0, 0)].is_zero(), "B_{n}");
    }
    let expected = MatPoly::from_entries(&[vec![Poly::new(vec![rat(1, 1), rat(-3, 1)])]]);
    for n in 1..=4usize {
        let psi = psi_hat(&fam, n).unwrap();
        assert_eq!(psi.mat, expected, "level {n}");
    }
}

#[test]
fn a_matrix_functional_with_a_mass_regenerates_its_symbol_and_is_flat() {
    // Ψ̂* has one zero inside the disk (z = 1/3) and one outside (z = 2).
    // Its functional — inverse weight plus the canonical mass — must be
    // flat beyond level 1 and hand back Ψ̂* itself.
    let o = rotation(0.8, -0.6);
    let psi_star = rotated_diag(
        &o,
        &Poly::new(vec![1.0, -3.0]),
        &Poly::new(vec![1.0, -0.5]),
    );
    let zeros = psi_zero_analysis(&psi_star, &cfg()).unwrap();
    assert_eq!(zeros.len(), 1);
    let mass = canonical_weight(&psi_star, &zeros[0], &cfg()).unwrap();
    assert!(mass.consistency_residual < 1e-9);
    let f = functional_from_psi(&psi_star, &[mass], 9, &cfg()).unwrap();
    let fam = matrix_gram_schmidt(&f, 4).unwrap();
    let half_eye = Mat::<f64>::identity(2).scale(&0.5);
    for n in 2..=4usize {
        assert!(
            fam.a_n(n).max_abs_diff(&half_eye) < 1e-8,
            "A_{n} strays: {:?}",
            fam.a_n(n)
        );
    }
    for n in 1..=3usize {
        assert!(fam.b_n(n).max_abs() < 1e-8, "B_{n} strays");
    }
    let psi = psi_hat(&fam, 1).unwrap();
    assert!(
        psi.mat.max_abs_diff(&psi_star) < 1e-8,
        "Ψ̂ drifts by {}",
        psi.mat.max_abs_diff(&psi_star)
    );
}

#[test]
fn random_stable_factors_roundtrip_through_their_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..5 {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let o = rotation(theta.cos(), theta.sin());
        let roots1: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.45..0.45)).collect();
        let roots2: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.45..0.45)).collect();
        let psi_star = rotated_diag(&o, &factor_poly(&roots1), &factor_poly(&roots2));
        let w = weight_from_psi(&psi_star, &cfg()).unwrap();
        let psi = matrix_fejer_riesz(&w, &cfg()).unwrap();
        assert!(
            psi.max_abs_diff(&psi_star) < 1e-8,
            "trial {trial}: drift {}",
            psi.max_abs_diff(&psi_star)
        );

        // Stability of the computed factor: no root of det Ψ may fall
        // inside the unit disk.
        let det = psi.det_poly();
        for root in poly_roots(det.coeffs()).unwrap() {
            let r = (root.re * root.re + root.im * root.im).sqrt();
            assert!(r >= 1.0 - 1e-8, "trial {trial}: root radius {r}");
        }
    }
}
