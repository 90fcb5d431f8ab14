//! Polynomial types and exact algebra for the workspace: dense univariate
//! polynomials, Laurent polynomials, bivariate grids with named variable
//! pairs, matrix-valued polynomials, Chebyshev substitution machinery, the
//! pair ↔ w-polynomial correspondence, and exact gcd/resultant routines.

pub mod bivar;
pub mod cheb;
pub mod gcd;
pub mod iso;
pub mod laurent;
pub mod matpoly;
pub mod real;
pub mod sturm;

pub use bivar::{Bivar, VarPair};
pub use cheb::{
    cheb_pullback_poly, cheb_pullback_var1, cheb_substitute, cheb_t, cheb_u,
    half_sum, poly_to_u_coeffs, symmetric_laurent_to_poly, u_coeffs_to_poly,
};
pub use gcd::{
    bivar_exact_div, bivar_gcd, extended_gcd, gcd, interpolate, monic_sqrt,
    normalize_primitive, resultant, yun_squarefree,
};
pub use iso::{
    pair_to_w, pair_to_w_poly, u_component, u_component_var1,
    u_component_var2, w_to_pair, w_to_pair_poly,
};
pub use laurent::Laurent;
pub use matpoly::MatPoly;
pub use real::{Poly, PolyError};
pub use sturm::{count_roots_ge, count_roots_le, count_roots_open, sturm_chain};
