//! Truncated power series in one and two variables over any [`Ring`].
//!
//! A `Series` of order M stores the coefficients of z^0 .. z^(M-1); everything
//! from z^M on is unknown. Binary operations truncate to the smaller order.

use std::fmt;

use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq)]
pub struct Series<C: Ring> {
    coeffs: Vec<C>,
}

impl<C: Ring> Series<C> {
    /// Series of order `coeffs.len()`.
    pub fn new(coeffs: Vec<C>) -> Self {
        Series { coeffs }
    }

    /// Series of the given order, padding or truncating `coeffs`.
    pub fn with_order(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order, C::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::with_order(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series z.
    pub fn var(order: usize) -> Self {
        Self::with_order(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_order(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() + o.coeffs[k].clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() - o.coeffs[k].clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| s.clone() * c.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiply by z^k, keeping the order (top k terms drop off).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![C::zero(); k.min(n)];
        c.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        Series { coeffs: c }
    }

    /// Divide by z^k. The k lowest coefficients must vanish (compared with `==`);
    /// returns `None` otherwise. The order drops by k.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| *c != C::zero()) {
            return None;
        }
        Some(Series { coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }

    /// f(g) for g with zero constant term. Horner in g; the result has the order of g
    /// capped at the order of `self` when g starts at z^1.
    pub fn compose(&self, g: &Self) -> Self {
        assert!(g.coeff(0) == C::zero(), "inner series must have zero constant term");
        let n = g.order().min(self.order());
        let g = g.truncate(n);
        let mut acc = Series::zero(n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        acc
    }

    /// Σ c_k x^k over the stored terms.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        Series {
            coeffs: (1..n).map(|k| C::from_int(k as i64) * self.coeffs[k].clone()).collect(),
        }
    }

    /// Index of the first coefficient that is not `== 0`.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != C::zero())
    }
}

impl<C: Field> Series<C> {
    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.order();
        let c0i = self.coeffs.first()?.inv()?;
        let mut r = vec![C::zero(); n];
        r[0] = c0i.clone();
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + self.coeffs[j].clone() * r[k - j].clone();
                }
            }
            r[k] = -(c0i.clone() * acc);
        }
        Some(Series { coeffs: r })
    }

    /// Antiderivative with zero constant term; order grows by one.
    pub fn integrate(&self) -> Option<Self> {
        let mut c = vec![C::zero()];
        for (k, a) in self.coeffs.iter().enumerate() {
            c.push(a.checked_div(&C::from_int(k as i64 + 1))?);
        }
        Some(Series { coeffs: c })
    }

    /// Compositional inverse g of f (f(0) = 0, f'(0) invertible): f(g(z)) = z.
    pub fn reversion(&self) -> Option<Self> {
        let n = self.order();
        if n < 2 || self.coeffs[0] != C::zero() {
            return None;
        }
        let f1i = self.coeffs[1].inv()?;
        let mut g = Series::with_order(vec![C::zero(), f1i.clone()], n);
        for k in 2..n {
            let comp = self.compose(&g.truncate(k + 1));
            let err = comp.coeff(k);
            g.coeffs[k] = g.coeffs[k].clone() - f1i.clone() * err;
        }
        Some(g)
    }
}

impl<C: Ring + fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c:?})z^{k}"))
            .collect();
        write!(f, "{} + O(z^{})", terms.join(" + "), self.order())
    }
}

/// Power series in two variables, truncated at total degree `order`.
#[derive(Clone, PartialEq)]
pub struct Series2<C: Ring> {
    order: usize,
    /// `rows[i][j]` is the coefficient of z1^i z2^j, with i + j < order.
    rows: Vec<Vec<C>>,
}

impl<C: Ring> Series2<C> {
    pub fn zero(order: usize) -> Self {
        Series2 { order, rows: (0..order).map(|i| vec![C::zero(); order - i]).collect() }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.rows[0][0] = c;
        }
        s
    }

    /// A series in z1 only.
    pub fn from_first(f: &Series<C>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, row) in s.rows.iter_mut().enumerate() {
            row[0] = f.coeff(i);
        }
        s
    }

    /// A series in z2 only.
    pub fn from_second(f: &Series<C>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for j in 0..order {
            s.rows[0][j] = f.coeff(j);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        if i + j < self.order {
            self.rows[i][j].clone()
        } else {
            C::zero()
        }
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.rows[i][j] = c;
    }

    /// Nonzero terms as ((i, j), coefficient).
    pub fn terms(&self) -> Vec<((usize, usize), C)> {
        let mut out = vec![];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push(((i, j), c.clone()));
                }
            }
        }
        out
    }

    fn zip(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let n = self.order.min(o.order);
        Series2 {
            order: n,
            rows: (0..n)
                .map(|i| (0..n - i).map(|j| f(&self.rows[i][j], &o.rows[i][j])).collect())
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        Series2 {
            order: self.order,
            rows: self.rows.iter().map(|r| r.iter().map(|c| s.clone() * c.clone()).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order.min(o.order);
        let mut out = Self::zero(n);
        let a_terms = self.truncated(n).terms();
        let b_terms = o.truncated(n).terms();
        for ((i, j), a) in &a_terms {
            for ((k, l), b) in &b_terms {
                if i + j + k + l < n {
                    out.rows[i + k][j + l] = out.rows[i + k][j + l].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    fn truncated(&self, n: usize) -> Self {
        if n >= self.order {
            return self.clone();
        }
        Series2 { order: n, rows: (0..n).map(|i| self.rows[i][..n - i].to_vec()).collect() }
    }

    /// Exchange the two variables.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.rows[j][i] = c.clone();
            }
        }
        out
    }

    /// f(S) for a one-variable f and S with zero constant term.
    pub fn compose_into(f: &Series<C>, s: &Self) -> Self {
        assert!(s.coeff(0, 0) == C::zero(), "inner series must have zero constant term");
        let n = s.order.min(f.order());
        let s = s.truncated(n);
        let mut acc = Self::zero(n);
        for c in f.coeffs().iter().take(n).rev() {
            acc = acc.mul(&s);
            acc.rows[0][0] = acc.rows[0][0].clone() + c.clone();
        }
        acc
    }

    /// Substitute a value for z1, leaving a series in z2: Σ_j (Σ_i c_ij x^i) z2^j.
    pub fn specialize_first(&self, x: &C) -> Series<C> {
        let mut out = vec![C::zero(); self.order];
        let mut pw = C::one();
        for row in &self.rows {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out[j] = out[j].clone() + c.clone() * pw.clone();
                }
            }
            pw = pw * x.clone();
        }
        Series::new(out)
    }

    pub fn eval(&self, x: &C, y: &C) -> C {
        self.specialize_first(x).eval(y)
    }
}

impl<C: Ring + fmt::Debug> fmt::Debug for Series2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.terms().iter().map(|((i, j), c)| format!("({c:?})z1^{i}z2^{j}")).collect();
        write!(f, "{} + O(deg {})", terms.join(" + "), self.order)
    }
}

impl<C: Field> Series2<C> {
    /// Inverse of a series with invertible constant term, via 1/(c(1 + t)) = c^-1 Σ (-t)^k.
    pub fn inverse(&self) -> Option<Self> {
        let c0i = self.rows.first()?.first()?.inv()?;
        let mut t = self.scale(&c0i);
        t.rows[0][0] = C::zero();
        let mut geo = vec![C::zero(); self.order];
        for (k, g) in geo.iter_mut().enumerate() {
            *g = if k % 2 == 0 { C::one() } else { -C::one() };
        }
        Some(Self::compose_into(&Series::new(geo), &t).scale(&c0i))
    }
}
