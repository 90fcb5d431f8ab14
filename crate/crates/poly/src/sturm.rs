//! Exact counting of distinct real roots of rational polynomials by Sturm
//! chains. Used wherever a yes/no root-location question must be answered
//! without floating-point doubt (interval invertibility reports, stability
//! certificates).

use crate::gcd::gcd;
use crate::real::Poly;
use numerics::{Rat, Scalar};

/// Sturm chain of `p`: starts with `p` and `p'`, then iterated negated
/// remainders, truncated at the first zero remainder.
pub fn sturm_chain(p: &Poly<Rat>) -> Vec<Poly<Rat>> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

/// Count sign changes in a sequence, skipping zeros.
fn variations(signs: impl IntoIterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[Poly<Rat>], x: &Rat) -> usize {
    variations(chain.iter().map(|q| q.eval(x).signum_i32()))
}

/// Sign variations in the limit x → ±∞.
fn variations_at_inf(chain: &[Poly<Rat>], positive: bool) -> usize {
    variations(chain.iter().map(|q| {
        if q.is_zero() {
            return 0;
        }
        let s = q.lead().signum_i32();
        if positive || q.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Squarefree part p / gcd(p, p'). Sturm's theorem is stated for squarefree
/// inputs, and all the public counters reduce to it first, so every count
/// below is of *distinct* roots.
fn squarefree_part(p: &Poly<Rat>) -> Poly<Rat> {
    let g = gcd(p, &p.derivative());
    if g.deg() <= 0 {
        return p.clone();
    }
    p.exact_div(&g).expect("gcd divides its argument")
}

/// Number of distinct real roots of `p` in the open interval (a, b).
/// Returns 0 for constant `p`; `p` must not be identically zero.
pub fn count_roots_open(p: &Poly<Rat>, a: &Rat, b: &Rat) -> usize {
    debug_assert!(!p.is_zero(), "root counting needs a nonzero polynomial");
    if p.deg() <= 0 || a >= b {
        return 0;
    }
    let ps = squarefree_part(p);
    let chain = sturm_chain(&ps);
    // V(a) − V(b) counts roots in the half-open cell (a, b].
    let half_open = variations_at(&chain, a) - variations_at(&chain, b);
    let b_is_root = ps.eval(b).is_zero();
    half_open - usize::from(b_is_root)
}

/// Number of distinct real roots of `p` in [a, ∞).
pub fn count_roots_ge(p: &Poly<Rat>, a: &Rat) -> usize {
    debug_assert!(!p.is_zero(), "root counting needs a nonzero polynomial");
    if p.deg() <= 0 {
        return 0;
    }
    let ps = squarefree_part(p);
    let chain = sturm_chain(&ps);
    let above = variations_at(&chain, a) - variations_at_inf(&chain, true);
    above + usize::from(ps.eval(a).is_zero())
}

/// Number of distinct real roots of `p` in (−∞, a].
pub fn count_roots_le(p: &Poly<Rat>, a: &Rat) -> usize {
    debug_assert!(!p.is_zero(), "root counting needs a nonzero polynomial");
    if p.deg() <= 0 {
        return 0;
    }
    let ps = squarefree_part(p);
    let chain = sturm_chain(&ps);
    variations_at_inf(&chain, false) - variations_at(&chain, a)
}
