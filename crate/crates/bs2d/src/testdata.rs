//! Shared unit-test data.

use crate::table::MomentTable;
use numerics::{rat, Rat};

/// Semicircle moments (2/π)∫x^j√(1−x²)dx: Catalan(t)/4^t at j = 2t, zero odd.
pub(crate) fn semicircle_moments(count: usize) -> Vec<Rat> {
    let mut h = vec![rat(0, 1); count];
    let mut cat = rat(1, 1);
    for t in 0..count.div_ceil(2) {
        h[2 * t] = &cat / rat(4i64.pow(t as u32), 1);
        let tt = t as i64;
        cat = cat * rat(2 * (2 * tt + 1), tt + 2);
    }
    h
}

/// Product Chebyshev table: h[k][l] = u_k · u_l with u the semicircle
/// moments (u_0 = 1, u_2 = 1/4, odd zero).
pub(crate) fn chebyshev_table(n: usize, m: usize) -> MomentTable<Rat> {
    let u = semicircle_moments(2 * n.max(m) + 1);
    let h = (0..=2 * n)
        .map(|k| (0..=2 * m).map(|l| u[k].clone() * u[l].clone()).collect())
        .collect();
    MomentTable::new(h)
}
