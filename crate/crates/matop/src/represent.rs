//! Decide whether a positive functional on matrix polynomials of degree
//! ≤ 2N is represented by a pure weight: build Ψ̂_N, certify by exact
//! Sturm count that det Ψ̂_N has no root on (−1, 1), and when it has none,
//! return W = Ψ̂_N(1/z)ᵗΨ̂_N(z) together with a moment-level certification
//! of the representation. Simple zeros at ±1 are allowed: the weight stays
//! integrable there.

use crate::functional::MatFunctional;
use crate::gram::matrix_gram_schmidt;
use crate::psi::psi_hat;
use crate::weight::{functional_from_psi, weight_from_psi};
use crate::MatopError;
use numerics::{poly_roots, rat, Rat, Scalar, ToleranceConfig};
use poly::{count_roots_open, Poly};

/// Outcome of the representation check at one level.
#[derive(Debug, Clone)]
pub struct WeightRepresentation {
    /// Exact Sturm verdict: det Ψ̂_N has no root strictly inside (−1, 1).
    pub invertible_on_interval: bool,
    /// The weight, present exactly when the verdict is positive.
    pub w: Option<poly::MatPoly<f64>>,
    /// A root of det Ψ̂_N inside (−1, 1) when the verdict is negative.
    pub witness: Option<f64>,
    /// Relative gap between the input moments and those regenerated from
    /// the weight (present when the certifying quadrature converged).
    pub moment_residual: Option<f64>,
}

/// Trim trailing coefficients below a relative threshold, then lift the
/// survivors bit-for-bit into exact rationals.
fn exact_lift(p: &Poly<f64>) -> Poly<Rat> {
    let scale = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let mut coeffs: Vec<f64> = p.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.abs() <= 1e-12 * scale) {
        coeffs.pop();
    }
    Poly::new(
        coeffs
            .iter()
            .map(|c| {
                if c.abs() <= 1e-12 * scale {
                    Rat::zero()
                } else {
                    Rat::from_f64_exact(*c)
                }
            })
            .collect(),
    )
}

/// Run the check for the functional at level `n` (it must supply moments
/// through degree 2n). Failure to be representable is a report, not an
/// error; errors mean the family itself could not be built.
pub fn weight_representation(
    f: &MatFunctional<f64>,
    n: usize,
    cfg: &ToleranceConfig,
) -> Result<WeightRepresentation, MatopError> {
    let fam = matrix_gram_schmidt(f, n)?;
    let psi = psi_hat(&fam, n)?;
    let det = exact_lift(&psi.mat.det_poly());
    let inside = count_roots_open(&det, &rat(-1, 1), &rat(1, 1));
    if inside > 0 {
        // Surface one concrete root as the witness.
        let detf = det.to_f64();
        let witness = poly_roots(detf.coeffs())
            .ok()
            .and_then(|roots| {
                roots
                    .iter()
                    .filter(|r| r.im.abs() < 1e-7 && r.re.abs() < 1.0)
                    .map(|r| r.re)
                    .min_by(|a, b| a.abs().total_cmp(&b.abs()))
            });
        return Ok(WeightRepresentation {
            invertible_on_interval: false,
            w: None,
            witness,
            moment_residual: None,
        });
    }
    let w = weight_from_psi(&psi.mat, cfg)?;
    let moment_residual = functional_from_psi(&psi.mat, &[], f.moment_count(), cfg)
        .ok()
        .map(|regen| {
            let mut worst = 0.0_f64;
            let mut scale = 1.0_f64;
            for j in 0..f.moment_count() {
                let a = f.moment(j).expect("within count");
                let b = regen.moment(j).expect("same count");
                worst = worst.max(a.max_abs_diff(&b));
                scale = scale.max(a.max_abs());
            }
            worst / scale
        });
    Ok(WeightRepresentation {
        invertible_on_interval: true,
        w: Some(w),
        witness: None,
        moment_residual,
    })
}
