//! Bivariate polynomials on a dense coefficient grid, tagged with the
//! variable pair they live in so pullbacks and isomorphisms cannot be
//! applied to the wrong object.

use crate::real::Poly;
use numerics::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Which pair of variables the grid is written in. The first variable
/// indexes rows, the second indexes columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarPair {
    /// (x, y): both real interval variables.
    XY,
    /// (x, w): real first variable, circle second variable.
    XW,
    /// (z, w): both circle variables.
    ZW,
    /// (z, y): circle first variable, real second variable.
    ZY,
}

impl VarPair {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            VarPair::XY => ("x", "y"),
            VarPair::XW => ("x", "w"),
            VarPair::ZW => ("z", "w"),
            VarPair::ZY => ("z", "y"),
        }
    }

    pub fn from_names(s: &str) -> Option<Self> {
        match s {
            "xy" => Some(VarPair::XY),
            "xw" => Some(VarPair::XW),
            "zw" => Some(VarPair::ZW),
            "zy" => Some(VarPair::ZY),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            VarPair::XY => "xy",
            VarPair::XW => "xw",
            VarPair::ZW => "zw",
            VarPair::ZY => "zy",
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Bivar<T> {
    vars: VarPair,
    rows: Vec<Vec<T>>, // rows[i][j] · var1^i · var2^j; rectangular, trimmed
}

impl<T: Scalar> fmt::Debug for Bivar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v1, v2) = self.vars.names();
        if self.rows.is_empty() {
            return write!(f, "0[{v1},{v2}]");
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(
                    move |(j, c)| format!("{}·{v1}^{i}{v2}^{j}", c.to_repr()),
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<T: Scalar> Bivar<T> {
    pub fn new(vars: VarPair, mut rows: Vec<Vec<T>>) -> Self {
        // Pad to rectangular, then trim zero fringes.
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        for r in &mut rows {
            while r.len() < width {
                r.push(T::zero());
            }
        }
        while rows
            .last()
            .map_or(false, |r| r.iter().all(Scalar::is_zero))
        {
            rows.pop();
        }
        let mut width = rows.iter().map(Vec::len).max().unwrap_or(0);
        while width > 0
            && rows
                .iter()
                .all(|r| r[width - 1].is_zero())
        {
            for r in &mut rows {
                r.pop();
            }
            width -= 1;
        }
        if width == 0 {
            rows.clear();
        }
        Bivar { vars, rows }
    }

    pub fn zero(vars: VarPair) -> Self {
        Bivar { vars, rows: Vec::new() }
    }

    pub fn constant(vars: VarPair, c: T) -> Self {
        Bivar::new(vars, vec![vec![c]])
    }

    pub fn one(vars: VarPair) -> Self {
        Bivar::constant(vars, T::one())
    }

    pub fn from_ints(vars: VarPair, rows: &[&[i64]]) -> Self {
        Bivar::new(
            vars,
            rows.iter()
                .map(|r| r.iter().map(|&c| T::from_int(c)).collect())
                .collect(),
        )
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    /// Relabel the variable pair without touching coefficients (used by
    /// pullback code that has already performed the substitution).
    pub fn with_vars(&self, vars: VarPair) -> Self {
        Bivar { vars, rows: self.rows.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg1(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn deg2(&self) -> i64 {
        self.rows.first().map_or(-1, |r| r.len() as i64 - 1)
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.rows
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Row i as a polynomial in var2.
    pub fn row_poly(&self, i: usize) -> Poly<T> {
        Poly::new(self.rows.get(i).cloned().unwrap_or_default())
    }

    /// Column j as a polynomial in var1.
    pub fn col_poly(&self, j: usize) -> Poly<T> {
        Poly::new(self.rows.iter().map(|r| r.get(j).cloned().unwrap_or_else(T::zero)).collect())
    }

    /// Build from var1-rows: entry k is the coefficient (a poly in var2) of var1^k.
    pub fn from_rows(vars: VarPair, rows: Vec<Poly<T>>) -> Self {
        Bivar::new(vars, rows.into_iter().map(|p| p.coeffs().to_vec()).collect())
    }

    /// Build from var2-columns: entry k is the coefficient (a poly in var1) of var2^k.
    pub fn from_cols(vars: VarPair, cols: Vec<Poly<T>>) -> Self {
        let d1 = cols.iter().map(|p| p.deg()).max().unwrap_or(-1);
        if d1 < 0 {
            return Bivar::zero(vars);
        }
        let rows = (0..=(d1 as usize))
            .map(|i| cols.iter().map(|p| p.coeff(i)).collect())
            .collect();
        Bivar::new(vars, rows)
    }

    /// Lift a univariate polynomial in var1.
    pub fn from_poly_var1(vars: VarPair, p: &Poly<T>) -> Self {
        Bivar::new(vars, p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    /// Lift a univariate polynomial in var2.
    pub fn from_poly_var2(vars: VarPair, p: &Poly<T>) -> Self {
        Bivar::new(vars, vec![p.coeffs().to_vec()])
    }

    pub fn eval(&self, a: &T, b: &T) -> T {
        let mut acc = T::zero();
        for row in self.rows.iter().rev() {
            let mut rowacc = T::zero();
            for c in row.iter().rev() {
                rowacc = rowacc * b.clone() + c.clone();
            }
            acc = acc * a.clone() + rowacc;
        }
        acc
    }

    /// Fix var1 = a, producing a polynomial in var2.
    pub fn eval_var1(&self, a: &T) -> Poly<T> {
        let mut acc = Poly::zero();
        for row in self.rows.iter().rev() {
            acc = &acc.scale(a) + &Poly::new(row.clone());
        }
        acc
    }

    /// Fix var2 = b, producing a polynomial in var1.
    pub fn eval_var2(&self, b: &T) -> Poly<T> {
        Poly::new(
            self.rows
                .iter()
                .map(|row| Poly::new(row.clone()).eval(b))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Bivar::new(
            self.vars,
            self.rows
                .iter()
                .map(|r| r.iter().map(|c| c.clone() * s.clone()).collect())
                .collect(),
        )
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Bivar<U> {
        Bivar::new(
            self.vars,
            self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        )
    }

    pub fn to_f64(&self) -> Bivar<f64> {
        self.map(Scalar::to_f64)
    }

    /// Multiply by a univariate polynomial in var1.
    pub fn mul_poly_var1(&self, p: &Poly<T>) -> Self {
        self * &Bivar::from_poly_var1(self.vars, p)
    }

    /// Multiply by a univariate polynomial in var2.
    pub fn mul_poly_var2(&self, p: &Poly<T>) -> Self {
        self * &Bivar::from_poly_var2(self.vars, p)
    }

    /// Exact division by a univariate polynomial in var1 (column-wise).
    pub fn exact_div_poly_var1(&self, p: &Poly<T>) -> Option<Self> {
        if self.is_zero() {
            return Some(Bivar::zero(self.vars));
        }
        let d2 = self.deg2() as usize;
        let mut cols = Vec::with_capacity(d2 + 1);
        for j in 0..=d2 {
            cols.push(self.col_poly(j).exact_div(p)?);
        }
        Some(Bivar::from_cols(self.vars, cols))
    }

    /// Exact division by a univariate polynomial in var2 (row-wise).
    pub fn exact_div_poly_var2(&self, p: &Poly<T>) -> Option<Self> {
        if self.is_zero() {
            return Some(Bivar::zero(self.vars));
        }
        let d1 = self.deg1() as usize;
        let mut rows = Vec::with_capacity(d1 + 1);
        for i in 0..=d1 {
            rows.push(self.row_poly(i).exact_div(p)?);
        }
        Some(Bivar::from_rows(self.vars, rows))
    }

    /// Swap the two variables (transpose the grid), relabeling to `vars`.
    pub fn swap_into(&self, vars: VarPair) -> Self {
        if self.is_zero() {
            return Bivar::zero(vars);
        }
        let d1 = self.deg1() as usize;
        let d2 = self.deg2() as usize;
        Bivar::new(
            vars,
            (0..=d2)
                .map(|j| (0..=d1).map(|i| self.coeff(i, j)).collect())
                .collect(),
        )
    }

    /// var2^bound · p(·, 1/var2): reversal in the second variable.
    pub fn reverse_var2(&self, bound: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        assert!(self.deg2() <= bound as i64, "reversal bound below degree");
        Bivar::new(
            self.vars,
            self.rows
                .iter()
                .map(|r| {
                    let mut v = vec![T::zero(); bound + 1];
                    for (j, c) in r.iter().enumerate() {
                        v[bound - j] = c.clone();
                    }
                    v
                })
                .collect(),
        )
    }

    /// var1^bound · p(1/var1, ·): reversal in the first variable.
    pub fn reverse_var1(&self, bound: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        assert!(self.deg1() <= bound as i64, "reversal bound below degree");
        let mut rows = vec![vec![T::zero(); self.deg2() as usize + 1]; bound + 1];
        for (i, r) in self.rows.iter().enumerate() {
            rows[bound - i] = r.clone();
        }
        Bivar::new(self.vars, rows)
    }

    /// Substitute var2 ↦ −var2.
    pub fn flip_var2(&self) -> Self {
        Bivar::new(
            self.vars,
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .map(|(j, c)| if j % 2 == 1 { -c.clone() } else { c.clone() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(Scalar::mag))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = self - other;
        d.max_abs()
    }

    pub fn to_repr_grid(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(Scalar::to_repr).collect())
            .collect()
    }

    pub fn from_repr_grid(vars: VarPair, grid: &[Vec<String>]) -> Option<Self> {
        let rows: Option<Vec<Vec<T>>> = grid
            .iter()
            .map(|r| r.iter().map(|s| T::from_repr(s)).collect())
            .collect();
        Some(Bivar::new(vars, rows?))
    }
}

impl<T: Scalar> Add for &Bivar<T> {
    type Output = Bivar<T>;
    fn add(self, rhs: &Bivar<T>) -> Bivar<T> {
        assert_eq!(self.vars, rhs.vars, "variable pair mismatch");
        let d1 = self.deg1().max(rhs.deg1());
        let d2 = self.deg2().max(rhs.deg2());
        if d1 < 0 {
            return Bivar::zero(self.vars);
        }
        Bivar::new(
            self.vars,
            (0..=(d1 as usize))
                .map(|i| {
                    (0..=(d2.max(0) as usize))
                        .map(|j| self.coeff(i, j) + rhs.coeff(i, j))
                        .collect()
                })
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &Bivar<T> {
    type Output = Bivar<T>;
    fn sub(self, rhs: &Bivar<T>) -> Bivar<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Neg for &Bivar<T> {
    type Output = Bivar<T>;
    fn neg(self) -> Bivar<T> {
        Bivar {
            vars: self.vars,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| -c.clone()).collect())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Bivar<T> {
    type Output = Bivar<T>;
    fn mul(self, rhs: &Bivar<T>) -> Bivar<T> {
        assert_eq!(self.vars, rhs.vars, "variable pair mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Bivar::zero(self.vars);
        }
        let (a1, a2) = (self.deg1() as usize, self.deg2() as usize);
        let (b1, b2) = (rhs.deg1() as usize, rhs.deg2() as usize);
        let mut rows = vec![vec![T::zero(); a2 + b2 + 1]; a1 + b1 + 1];
        for i in 0..=a1 {
            for j in 0..=a2 {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                for k in 0..=b1 {
                    for l in 0..=b2 {
                        let add = c.clone() * rhs.coeff(k, l);
                        if !add.is_zero() {
                            rows[i + k][j + l] = rows[i + k][j + l].clone() + add;
                        }
                    }
                }
            }
        }
        Bivar::new(self.vars, rows)
    }
}
