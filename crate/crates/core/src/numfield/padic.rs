//! The ring of integers of Q_p(α) for an inert prime p, as coordinate vectors
//! over Z_p known modulo p^N.
//!
//! Each element carries its own absolute precision: `Some(N)` means the true
//! value is the stored one plus something in p^N Z_p[α]; `None` marks an exact
//! constant (zero, one, small integers) that can be combined with anything
//! without losing digits.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FieldTag, Nf, Rationals};
use crate::error::PadicError;
use crate::scalar::{adjugate, big_pow, det, mod_inverse, valuation, Field, Ring};

/// Valuation of a p-adic element whose value is only known to finite precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Valuation {
    /// Exactly v.
    Finite(u32),
    /// Indistinguishable from zero at the working precision: at least v.
    AtLeast(u32),
    /// The exact zero.
    Infinite,
}

impl Valuation {
    /// Lower bound usable in inequalities (`u32::MAX` for exact zero).
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
            Valuation::Infinite => u32::MAX,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Element of Z_p[α] modulo p^prec.
#[derive(Clone)]
pub struct Padic<K: FieldTag, const P: u32> {
    coords: Vec<BigInt>,
    prec: Option<u32>,
    _field: PhantomData<K>,
}

/// Checks that the minimal polynomial has no root mod p. For degree at most 3
/// this is irreducibility mod p, hence p is inert.
pub fn inertness_certificate<K: FieldTag>(p: u32) -> Result<(), PadicError> {
    let spec = K::spec();
    if spec.degree == 1 {
        return Ok(());
    }
    let not_inert = || PadicError::NotInert { field: spec.name.clone(), p };
    if spec.degree > 3 {
        return Err(not_inert());
    }
    let pb = BigInt::from(p);
    for r in 0..p {
        let r = BigInt::from(r);
        let v = spec
            .min_poly
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &r + c).mod_floor(&pb));
        if v.is_zero() {
            return Err(not_inert());
        }
    }
    Ok(())
}

impl<K: FieldTag, const P: u32> Padic<K, P> {
    fn from_parts(coords: Vec<BigInt>, prec: Option<u32>) -> Self {
        let mut out = Padic { coords, prec, _field: PhantomData };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if let Some(n) = self.prec {
            let m = big_pow(P, n);
            for c in &mut self.coords {
                *c = c.mod_floor(&m);
            }
        }
    }

    /// Coordinate-wise reduction of an exact element mod p^n.
    pub fn lift(a: &Nf<K>, n: u32) -> Result<Self, PadicError> {
        inertness_certificate::<K>(P)?;
        let m = big_pow(P, n);
        let coords = a
            .coords()
            .iter()
            .map(|c| {
                let inv = mod_inverse(c.denom(), &m).ok_or(PadicError::NotIntegral { p: P })?;
                Ok((c.numer() * inv).mod_floor(&m))
            })
            .collect::<Result<Vec<_>, PadicError>>()?;
        Ok(Self::from_parts(coords, Some(n)))
    }

    /// Exact element with the given integer coordinates.
    pub fn exact(coords: Vec<BigInt>) -> Self {
        let mut c = coords;
        c.resize(K::degree(), BigInt::zero());
        Self::from_parts(c, None)
    }

    /// Element with the given coordinates, known mod p^n.
    pub fn with_coords(coords: Vec<BigInt>, n: u32) -> Self {
        let mut c = coords;
        c.resize(K::degree(), BigInt::zero());
        Self::from_parts(c, Some(n))
    }

    pub fn prime() -> u32 {
        P
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn precision(&self) -> Option<u32> {
        self.prec
    }

    /// Lower the precision to at most `n` (never raises it).
    pub fn cap_precision(&self, n: u32) -> Self {
        match self.prec {
            Some(k) if k <= n => self.clone(),
            _ => Self::from_parts(self.coords.clone(), Some(n)),
        }
    }

    pub fn valuation(&self) -> Valuation {
        let v = self.coords.iter().filter_map(|c| valuation(c, P)).min();
        match (v, self.prec) {
            (None, None) => Valuation::Infinite,
            (None, Some(n)) => Valuation::AtLeast(n),
            (Some(v), Some(n)) if v >= n => Valuation::AtLeast(n),
            (Some(v), _) => Valuation::Finite(v),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// True when the value is zero to the known precision (or exactly zero).
    pub fn indistinguishable_from_zero(&self) -> bool {
        !matches!(self.valuation(), Valuation::Finite(_))
    }

    /// Divide by p^k. Requires every coordinate to be divisible; loses k digits.
    pub fn div_p_pow(&self, k: u32) -> Result<Self, PadicError> {
        let m = big_pow(P, k);
        let err = PadicError::NotDivisible { p: P, k, prec: self.prec };
        if let Some(n) = self.prec {
            if n < k {
                return Err(err);
            }
        }
        let mut out = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let (q, r) = c.div_rem(&m);
            if !r.is_zero() {
                return Err(err);
            }
            out.push(q);
        }
        Ok(Self::from_parts(out, self.prec.map(|n| n - k)))
    }

    pub fn mul_p_pow(&self, k: u32) -> Self {
        let m = big_pow(P, k);
        Self::from_parts(
            self.coords.iter().map(|c| c * &m).collect(),
            self.prec.map(|n| n + k),
        )
    }

    /// Multiply by an integer coprime to p without touching the precision.
    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::from_parts(self.coords.iter().map(|c| c * k).collect(), self.prec)
    }

    /// Coordinates as Z_p elements with this element's precision.
    pub fn split_coordinates(&self) -> Vec<Padic<Rationals, P>> {
        self.coords
            .iter()
            .map(|c| Padic::from_parts(vec![c.clone()], self.prec))
            .collect()
    }

    /// Reassemble Σ c_i α^i from Z_p coordinates.
    pub fn from_coordinates(parts: &[Padic<Rationals, P>]) -> Self {
        assert_eq!(parts.len(), K::degree());
        let prec = parts.iter().filter_map(|x| x.prec).min();
        Self::from_parts(parts.iter().map(|x| x.coords[0].clone()).collect(), prec)
    }

    /// Residue mod p of each coordinate (the image in the residue field of size p^d).
    pub fn residue(&self) -> Vec<u32> {
        let p = BigInt::from(P);
        self.coords
            .iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                u32::try_from(&r).expect("residue fits")
            })
            .collect()
    }

    /// Integer representative, for display and reports.
    pub fn to_nf(&self) -> Nf<K> {
        Nf::new(
            self.coords
                .iter()
                .map(|c| num_rational::BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).indistinguishable_from_zero()
    }

    /// Equality modulo p^n, regardless of the tracked precisions.
    pub fn congruent_mod(&self, other: &Self, n: u32) -> bool {
        let m = big_pow(P, n);
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| (a - b).mod_floor(&m).is_zero())
    }

    fn mul_matrix(&self) -> Vec<Vec<BigInt>> {
        let d = K::degree();
        let spec = K::spec();
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                let mut raw = vec![BigInt::zero(); d + j];
                for (i, c) in self.coords.iter().enumerate() {
                    raw[i + j] = c.clone();
                }
                spec.reduce_int(&raw)
            })
            .collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }
}

impl<K: FieldTag, const P: u32> fmt::Debug for Padic<K, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        match self.prec {
            Some(n) => write!(f, "[{}] + O({P}^{n})", cs.join(", ")),
            None => write!(f, "[{}]", cs.join(", ")),
        }
    }
}

impl<K: FieldTag, const P: u32> fmt::Display for Padic<K, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Value-level equality at the common precision; see [`Padic::agrees_with`].
impl<K: FieldTag, const P: u32> PartialEq for Padic<K, P> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

fn min_prec(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<K: FieldTag, const P: u32> Zero for Padic<K, P> {
    fn zero() -> Self {
        Self::from_parts(vec![BigInt::zero(); K::degree()], None)
    }
    /// Exact zero only; use [`Padic::indistinguishable_from_zero`] for the value test.
    fn is_zero(&self) -> bool {
        self.prec.is_none() && self.coords.iter().all(|c| c.is_zero())
    }
}

impl<K: FieldTag, const P: u32> One for Padic<K, P> {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<K: FieldTag, const P: u32> Add for Padic<K, P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let prec = min_prec(self.prec, o.prec);
        let coords = self.coords.into_iter().zip(o.coords).map(|(a, b)| a + b).collect();
        Self::from_parts(coords, prec)
    }
}

impl<K: FieldTag, const P: u32> Sub for Padic<K, P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let prec = min_prec(self.prec, o.prec);
        let coords = self.coords.into_iter().zip(o.coords).map(|(a, b)| a - b).collect();
        Self::from_parts(coords, prec)
    }
}

impl<K: FieldTag, const P: u32> Neg for Padic<K, P> {
    type Output = Self;
    fn neg(self) -> Self {
        let prec = self.prec;
        Self::from_parts(self.coords.into_iter().map(|c| -c).collect(), prec)
    }
}

impl<K: FieldTag, const P: u32> Mul for Padic<K, P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        // (a + O(p^m))(b + O(p^n)) = ab + O(p^min(m + v(b), n + v(a)))
        let va = self.valuation().lower_bound();
        let vb = o.valuation().lower_bound();
        let prec = min_prec(
            self.prec.map(|m| m.saturating_add(vb)),
            o.prec.map(|n| n.saturating_add(va)),
        );
        let d = K::degree();
        let mut raw = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        if let Some(n) = prec {
            let m = big_pow(P, n);
            for c in &mut raw {
                *c = c.mod_floor(&m);
            }
        }
        Self::from_parts(K::spec().reduce_int(&raw), prec)
    }
}

impl<K: FieldTag, const P: u32> Ring for Padic<K, P> {
    fn from_bigint(n: &BigInt) -> Self {
        let mut c = vec![BigInt::zero(); K::degree()];
        c[0] = n.clone();
        Self::from_parts(c, None)
    }
}

impl<K: FieldTag, const P: u32> Field for Padic<K, P> {
    /// Inverse of a unit. Exact elements are only inverted when their norm is ±1,
    /// so the inverse is again exact.
    fn inv(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let m = self.mul_matrix();
        let mr: Vec<Vec<num_rational::BigRational>> = m
            .iter()
            .map(|r| r.iter().map(|x| num_rational::BigRational::from_integer(x.clone())).collect())
            .collect();
        let dt = det(&mr).to_integer();
        let adj: Vec<BigInt> = adjugate(&mr).iter().map(|r| r[0].to_integer()).collect();
        match self.prec {
            None => {
                if dt.is_one() {
                    Some(Self::from_parts(adj, None))
                } else if (-&dt).is_one() {
                    Some(Self::from_parts(adj.into_iter().map(|c| -c).collect(), None))
                } else {
                    None
                }
            }
            Some(n) => {
                let modulus = big_pow(P, n);
                let di = mod_inverse(&dt, &modulus)?;
                Some(Self::from_parts(adj.into_iter().map(|c| c * &di).collect(), Some(n)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{QCubic, QSqrt3};
    use crate::scalar::rational;

    type Z7 = Padic<QSqrt3, 7>;
    type Z2 = Padic<QCubic, 2>;

    #[test]
    fn inert_primes() {
        assert!(inertness_certificate::<QSqrt3>(7).is_ok());
        assert!(inertness_certificate::<QCubic>(2).is_ok());
        assert!(inertness_certificate::<QSqrt3>(11).is_err()); // 3 = 5^2 mod 11
        assert!(inertness_certificate::<QCubic>(3).is_err());
    }

    #[test]
    fn lift_beta() {
        let beta = Nf::<QSqrt3>::new(vec![rational(3, 24), rational(-1, 24)]);
        let b = Z7::lift(&beta, 10).unwrap();
        assert!(b.is_unit());
        let bi = b.inv().unwrap();
        assert!((b * bi).agrees_with(&Z7::one()));
        let bad = Nf::<QSqrt3>::new(vec![rational(1, 7)]);
        assert_eq!(Z7::lift(&bad, 10).unwrap_err(), PadicError::NotIntegral { p: 7 });
    }

    #[test]
    fn valuations_and_precision() {
        let x = Z7::with_coords(vec![0.into(), 7.into()], 10);
        assert_eq!(x.valuation(), Valuation::Finite(1));
        assert_eq!(Z7::zero().valuation(), Valuation::Infinite);
        assert_eq!(Z7::with_coords(vec![], 10).valuation(), Valuation::AtLeast(10));
        assert_eq!(Z7::with_coords(vec![(7 * 94).into()], 10).valuation(), Valuation::Finite(1));
        // product loses nothing relative to absolute precision of the factors' valuations
        let y = x.clone() * x.clone();
        assert_eq!(y.precision(), Some(11));
        assert_eq!(y.valuation(), Valuation::Finite(2));
        let z = x.div_p_pow(1).unwrap();
        assert_eq!(z.precision(), Some(9));
        assert!(z.is_unit());
    }

    #[test]
    fn cubic_units_mod_2() {
        let a = Z2::lift(&Nf::gen(), 20).unwrap();
        let inv = a.inv().unwrap();
        // 1/α = α² - 3
        let expect = Z2::lift(&Nf::from_ints(&[-3, 0, 1]), 20).unwrap();
        assert!(inv.agrees_with(&expect));
        let exact = Z2::exact(vec![0.into(), 1.into()]);
        assert!(exact.inv().unwrap().precision().is_none());
    }
}
