//! Tolerance and budget knobs shared across the workspace.

/// Numerical tolerances. Every float comparison in the library routes
/// through one of these fields; exact-mode code ignores them.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceConfig {
    /// Relative tolerance for convergence and residual checks.
    pub rel_tol: f64,
    /// Absolute floor for "is this zero" decisions on floats.
    pub abs_tol: f64,
    /// Pairing tolerance for the root involution r ↦ 1/r: |r·r′ − 1| bound.
    pub root_pair_tol: f64,
    /// Maximum node-doubling rounds for adaptive quadrature.
    pub quad_doubling_limit: usize,
    /// Starting order for adaptive rules.
    pub grid_start: usize,
    /// Required ratio across the singular-value cut when deciding ranks.
    pub sv_gap: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            root_pair_tol: 1e-8,
            quad_doubling_limit: 20,
            grid_start: 8,
            sv_gap: 1e3,
        }
    }
}

impl ToleranceConfig {
    /// Panics when a field is out of its documented range; called by
    /// constructors that accept user overrides.
    pub fn validate(&self) {
        assert!(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.root_pair_tol > 0.0);
        assert!(
            self.rel_tol >= f64::EPSILON * 100.0,
            "rel_tol below 100× machine epsilon is not achievable"
        );
        assert!(self.quad_doubling_limit >= 1 && self.grid_start >= 2);
        assert!(self.sv_gap > 1.0);
    }
}
