//! Inverse problem: given moments h_0, …, h_{2k} of a weight
//! (2/π)√(1−y²)/|q(w)|², rebuild the symbol q.
//!
//! The top two columns of the inverted Hankel matrix are scalar multiples of
//! the degree-k and degree-(k−1) orthogonal polynomials, and those two glue
//! back into the symbol through w^k(a(ŵ) − w·b(ŵ)) with ŵ = (w + 1/w)/2.
//! Everything is exact over ℚ; the only irrationality that can survive is a
//! global scalar, which is kept separate as its square.

use crate::moments::{hankel_matrix, moments_from_q};
use crate::stable::StableFactor;
use crate::Bs1dError;
use numerics::{ldlt, CholeskyError, Rat, Scalar};
use poly::{pair_to_w_poly, Poly};

/// Result of a moment inversion: the symbol is √scale_sq · q. Whenever the
/// scale is a perfect rational square it has already been folded into q, so
/// exact inputs from a rational symbol come back with scale_sq = 1 and q
/// equal to that symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveredSymbol {
    pub q: Poly<Rat>,
    pub scale_sq: Rat,
}

impl RecoveredSymbol {
    /// Degree of the recovered symbol.
    pub fn degree(&self) -> usize {
        self.q.deg().max(0) as usize
    }

    /// Float coefficients of √scale_sq · q.
    pub fn symbol_f64(&self) -> Poly<f64> {
        self.q.to_f64().scale(&self.scale_sq.to_f64().sqrt())
    }
}

/// Recover the symbol from an odd-length moment list h_0, …, h_{2k}
/// (enough for any symbol degree m ≤ 2k). The recovered symbol is verified
/// to reproduce every given moment; stability failures are reported, never
/// papered over.
pub fn recover_q_from_hankel(h: &[Rat]) -> Result<RecoveredSymbol, Bs1dError> {
    if h.is_empty() || h.len() % 2 == 0 {
        return Err(Bs1dError::Numerical(
            "need an odd number of moments h_0, …, h_{2k}".into(),
        ));
    }
    let k = (h.len() - 1) / 2;
    let hk = hankel_matrix(h);
    match ldlt(&hk) {
        Ok(_) => {}
        Err(CholeskyError::NotPositiveDefinite { pivot }) => {
            return Err(Bs1dError::NotPositiveDefinite { pivot })
        }
        Err(e) => return Err(Bs1dError::Numerical(e.to_string())),
    }
    let g = hk
        .inverse()
        .map_err(|e| Bs1dError::Numerical(e.to_string()))?;

    let col = |j: usize| -> Poly<Rat> { Poly::new((0..=k).map(|i| g[(i, j)].clone()).collect()) };
    let r_k = col(k);
    let q_raw = if k == 0 {
        r_k
    } else {
        // Column k−1 mixes the two top orthogonal polynomials; strip the
        // degree-k component and rescale so both carry the same prefactor.
        let b = r_k.coeff(k - 1);
        let correction = r_k.scale(&(Rat::from_int(2) * b * g[(k, k)].recip()));
        let r_km1 = &col(k - 1).scale(&Rat::from_int(2)) - &correction;
        pair_to_w_poly(&r_k, &r_km1, k)
            .map_err(|e| Bs1dError::Numerical(format!("gluing failed: {e}")))?
    };

    let sf = StableFactor::from_symbol(&q_raw)?;
    let h_raw = moments_from_q(&sf, h.len())?;
    if h[0].is_zero() {
        return Err(Bs1dError::NotPositiveDefinite { pivot: 0 });
    }
    let scale_sq = h_raw[0].clone() * h[0].recip();
    for (j, (got, want)) in h_raw.iter().zip(h).enumerate() {
        if !(got.clone() - scale_sq.clone() * want.clone()).is_zero() {
            return Err(Bs1dError::Numerical(format!(
                "moment {j} is not reproduced by a symbol of degree ≤ {}",
                2 * k
            )));
        }
    }

    // Canonical form: fold a rational scale into q, else pin q(0) = 1.
    let c = q_raw.coeff(0);
    let q_norm = q_raw.scale(&c.recip());
    let scale_norm = scale_sq * c.clone() * c;
    match scale_norm.try_sqrt() {
        Some(s) => Ok(RecoveredSymbol {
            q: q_norm.scale(&s),
            scale_sq: Rat::one(),
        }),
        None => Ok(RecoveredSymbol {
            q: q_norm,
            scale_sq: scale_norm,
        }),
    }
}
