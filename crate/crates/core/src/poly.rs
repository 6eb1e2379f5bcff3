//! Dense univariate polynomials over the rationals, Sturm sequences, real root
//! isolation and rational interval arithmetic.
//!
//! All sign decisions are made on exact rationals. Isolating intervals start at
//! integer endpoints and are only ever bisected, so every endpoint is dyadic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{approx_f64, rational};

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational(c, 1)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational(i as i64, 1))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by the zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Squarefree part (same real roots, all simple).
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(r.scale(&rational(-1, 1)));
        }
        seq.pop();
        seq
    }

    /// Upper bound on the absolute value of every real root (Cauchy).
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("zero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        let b = m + BigRational::one();
        BigRational::from_integer(b.ceil().to_integer())
    }

    /// Disjoint isolating intervals `[lo, hi]`, one per distinct real root, in
    /// increasing order. Endpoints are never roots.
    pub fn isolate_real_roots(&self) -> Vec<Interval> {
        let sf = self.squarefree();
        if sf.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let seq = sf.sturm_sequence();
        let b = sf.root_bound();
        let mut out = vec![];
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let count = sturm_count(&seq, &lo) - sturm_count(&seq, &hi);
            match count {
                0 => {}
                1 => out.push(Interval::new(lo, hi)),
                _ => {
                    let mut mid = (&lo + &hi) / rational(2, 1);
                    // step off a root sitting exactly on the midpoint
                    let mut eps = (&hi - &lo) / rational(8, 1);
                    while sf.eval(&mid).is_zero() {
                        mid += &eps;
                        eps /= rational(2, 1);
                    }
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Shrink an isolating interval of a simple root until its width is at most `2^-bits`.
    pub fn refine_root(&self, iv: &Interval, bits: u32) -> Interval {
        let target = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), bits as usize));
        let mut lo = iv.lo.clone();
        let mut hi = iv.hi.clone();
        let mut slo = self.eval(&lo).signum();
        while &hi - &lo > target {
            let mid = (&lo + &hi) / rational(2, 1);
            let sm = self.eval(&mid).signum();
            if sm.is_zero() {
                return Interval::new(mid.clone(), mid);
            }
            if sm == slo {
                lo = mid;
                slo = sm;
            } else {
                hi = mid;
            }
        }
        Interval::new(lo, hi)
    }
}

fn sign_changes(vals: impl Iterator<Item = BigRational>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for v in vals {
        let s = match v.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => continue,
            Ordering::Greater => 1,
        };
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sturm_count(seq: &[RatPoly], x: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| p.eval(x)))
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Closed interval with rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `Some(sign)` when the whole interval lies strictly on one side of zero
    /// (or is the single point zero).
    pub fn sign(&self) -> Option<Ordering> {
        let z = BigRational::zero();
        if self.lo > z {
            Some(Ordering::Greater)
        } else if self.hi < z {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn midpoint_f64(&self) -> f64 {
        approx_f64(&((&self.lo + &self.hi) / rational(2, 1)))
    }

    /// Enclosure of `sum coeffs[i] x^i` for `x` ranging over `self` (Horner form).
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Interval {
        coeffs.iter().rev().fold(Interval::point(BigRational::zero()), |acc, c| {
            acc.mul(self).add(&Interval::point(c.clone()))
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.10}, {:.10}]", approx_f64(&self.lo), approx_f64(&self.hi))
    }
}
