//! Shared numerical kernel: scalar modes (exact ℚ / f64), dense matrices,
//! Cholesky and LDLᵗ, companion-matrix polynomial roots, Gauss–Chebyshev and
//! torus quadrature, SVD nullspaces, tolerances, and a data-parallel map.
//!
//! Everything here is pure and reentrant; containers are immutable after
//! construction and safe to share across threads.

pub mod cholesky;
pub mod mat;
pub mod nullspace;
pub mod par;
pub mod quad;
pub mod roots;
pub mod scalar;
pub mod tol;

pub use cholesky::{cholesky, is_positive_definite, ldlt, CholeskyError};
pub use mat::{Mat, MatError};
pub use nullspace::{nullspace, NullspaceError};
pub use par::{par_map, thread_width};
pub use quad::{integrate_adaptive, integrate_adaptive_2d, QuadError, QuadratureRule, RuleKind};
pub use roots::{eval_complex, poly_roots, roots_residual, RootsError, C64};
pub use scalar::{rat, rational_snap, to_f64_vec, Rat, Scalar};
pub use tol::ToleranceConfig;
