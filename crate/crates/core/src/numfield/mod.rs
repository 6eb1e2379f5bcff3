//! Exact arithmetic in Q(α) for a monic integer minimal polynomial, the p-adic
//! completion at an inert prime, and real embeddings.
//!
//! Field data (minimal polynomial, units, Galois action, trusted annotations)
//! is read from `data/fields.json`. A zero-sized marker type ties each Rust type
//! to one record of that file, so `Nf<QSqrt3>` and `Nf<QCubic>` cannot be mixed.

mod padic;
mod real;

pub use padic::{inertness_certificate, Padic, Valuation};
pub use real::{
    embedding_signs, lambda_candidates, positivity_filter, positivity_filter_at, real_embeddings,
    real_roots,
};

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::NumberFieldError;
use crate::poly::{Interval, RatPoly};
use crate::scalar::{adjugate, det, Field, Ring};

const FIELD_DATA: &str = include_str!("../../data/fields.json");
pub const FIELD_SCHEMA_VERSION: u32 = 1;

#[derive(Deserialize)]
struct FieldFile {
    schema_version: u32,
    fields: Vec<FieldRecord>,
}

#[derive(Deserialize)]
struct FieldRecord {
    name: String,
    #[serde(default)]
    generator: Option<String>,
    min_poly: Vec<i64>,
    units: Vec<UnitRecord>,
    sigma: Option<Vec<Vec<String>>>,
    annotations: BTreeMap<String, serde_json::Value>,
}

#[derive(Deserialize)]
struct UnitRecord {
    label: String,
    coords: Vec<String>,
}

/// One number field: Q[x]/(f) with f monic.
#[derive(Debug)]
pub struct FieldSpec {
    pub name: String,
    pub generator: String,
    pub degree: usize,
    /// Coefficients of the minimal polynomial, constant term first.
    pub min_poly: Vec<BigInt>,
    pub units: Vec<(String, Vec<BigRational>)>,
    /// `sigma[j]` holds the coordinates of σ(α^j).
    pub sigma: Option<Vec<Vec<BigRational>>>,
    pub annotations: BTreeMap<String, serde_json::Value>,
    /// Reduced integer coordinates of α^k for k < 3d.
    power_table: Vec<Vec<BigInt>>,
    roots: OnceLock<Vec<Interval>>,
}

impl FieldSpec {
    fn from_record(r: FieldRecord) -> Result<Self, NumberFieldError> {
        let bad = |m: &str| NumberFieldError::Malformed(format!("{}: {m}", r.name));
        if r.min_poly.len() < 2 || *r.min_poly.last().unwrap() != 1 {
            return Err(bad("minimal polynomial must be monic of positive degree"));
        }
        let degree = r.min_poly.len() - 1;
        let min_poly: Vec<BigInt> = r.min_poly.iter().map(|&c| BigInt::from(c)).collect();
        let parse_vec = |v: &[String]| -> Result<Vec<BigRational>, NumberFieldError> {
            if v.len() != degree {
                return Err(bad("coordinate vector has the wrong length"));
            }
            v.iter().map(|s| parse_rational(s).ok_or_else(|| bad("bad rational"))).collect()
        };
        let units = r
            .units
            .iter()
            .map(|u| Ok((u.label.clone(), parse_vec(&u.coords)?)))
            .collect::<Result<Vec<_>, NumberFieldError>>()?;
        let sigma = match &r.sigma {
            None => None,
            Some(rows) if rows.len() == degree => {
                Some(rows.iter().map(|row| parse_vec(row)).collect::<Result<Vec<_>, _>>()?)
            }
            Some(_) => return Err(bad("sigma needs one image per basis element")),
        };
        let power_table = build_power_table(&min_poly);
        Ok(FieldSpec {
            generator: r.generator.unwrap_or_else(|| "a".into()),
            name: r.name,
            degree,
            min_poly,
            units,
            sigma,
            annotations: r.annotations,
            power_table,
            roots: OnceLock::new(),
        })
    }

    pub fn min_poly_rat(&self) -> RatPoly {
        RatPoly::from_bigints(&self.min_poly)
    }

    /// Rational root test; sufficient for irreducibility in degree 2 and 3.
    pub fn has_rational_root(&self) -> bool {
        let f = self.min_poly_rat();
        rational_root_candidates(&self.min_poly).iter().any(|c| f.eval(c).is_zero())
    }

    /// Discriminant of the minimal polynomial, computed from the power table as
    /// det(Tr(α^(i+j))).
    pub fn poly_discriminant(&self) -> BigInt {
        let d = self.degree;
        let traces: Vec<BigInt> = (0..2 * d - 1).map(|k| self.trace_of_power(k)).collect();
        let m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|j| BigRational::from_integer(traces[i + j].clone())).collect())
            .collect();
        det(&m).to_integer()
    }

    fn trace_of_power(&self, k: usize) -> BigInt {
        // trace of multiplication by α^k: sum of diagonal entries
        let d = self.degree;
        let mut t = BigInt::zero();
        for j in 0..d {
            let col = &self.power_table[k + j];
            t += &col[j];
        }
        t
    }

    pub(crate) fn reduce(&self, raw: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        let mut out = vec![BigRational::zero(); d];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.power_table[k]) {
                if !t.is_zero() {
                    *o += c * t;
                }
            }
        }
        out
    }

    pub(crate) fn reduce_int(&self, raw: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree;
        let mut out = vec![BigInt::zero(); d];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.power_table[k]) {
                if !t.is_zero() {
                    *o += c * t;
                }
            }
        }
        out
    }

    /// Isolating intervals for the real roots of the minimal polynomial.
    pub fn real_root_intervals(&self) -> &[Interval] {
        self.roots.get_or_init(|| self.min_poly_rat().isolate_real_roots())
    }
}

fn build_power_table(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = f.len() - 1;
    let mut table = Vec::with_capacity(3 * d);
    let mut cur = vec![BigInt::zero(); d];
    cur[0] = BigInt::one();
    for _ in 0..3 * d {
        table.push(cur.clone());
        // multiply by α: shift, then replace α^d by -(f_0 + ... + f_{d-1} α^{d-1})
        let top = cur[d - 1].clone();
        let mut next = vec![BigInt::zero(); d];
        for i in (1..d).rev() {
            next[i] = cur[i - 1].clone();
        }
        for i in 0..d {
            next[i] -= &top * &f[i];
        }
        cur = next;
    }
    table
}

fn rational_root_candidates(f: &[BigInt]) -> Vec<BigRational> {
    // monic: rational roots are integer divisors of the constant term
    let c = f[0].abs();
    if c.is_zero() {
        return vec![BigRational::zero()];
    }
    let mut out = vec![];
    let mut k = BigInt::one();
    while k <= c {
        if (&c % &k).is_zero() {
            out.push(BigRational::from_integer(k.clone()));
            out.push(BigRational::from_integer(-k.clone()));
        }
        k += 1;
    }
    out
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

static REGISTRY: OnceLock<Vec<FieldSpec>> = OnceLock::new();

fn load_registry() -> Result<Vec<FieldSpec>, NumberFieldError> {
    let file: FieldFile =
        serde_json::from_str(FIELD_DATA).map_err(|e| NumberFieldError::Malformed(e.to_string()))?;
    if file.schema_version != FIELD_SCHEMA_VERSION {
        return Err(NumberFieldError::Malformed(format!(
            "schema version {} (expected {FIELD_SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    file.fields.into_iter().map(FieldSpec::from_record).collect()
}

/// All shipped field specifications.
pub fn registry() -> &'static [FieldSpec] {
    REGISTRY.get_or_init(|| load_registry().expect("bundled field data is valid"))
}

pub fn field_by_name(name: &str) -> Result<&'static FieldSpec, NumberFieldError> {
    registry()
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| NumberFieldError::UnknownField(name.to_string()))
}

/// Static marker selecting one shipped field.
pub trait FieldTag:
    Copy + Clone + Default + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const NAME: &'static str;

    fn spec() -> &'static FieldSpec {
        field_by_name(Self::NAME).expect("marker names a bundled field")
    }

    fn degree() -> usize {
        Self::spec().degree
    }
}

/// The rationals, as the degree-one field Q[x]/(x).
#[derive(Copy, Clone, Default, Debug, PartialEq, Eq, Hash)]
pub struct Rationals;
/// K = Q(√3).
#[derive(Copy, Clone, Default, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt3;
/// L = Q(α) with α³ = 3α + 1.
#[derive(Copy, Clone, Default, Debug, PartialEq, Eq, Hash)]
pub struct QCubic;

impl FieldTag for Rationals {
    const NAME: &'static str = "Q";
}
impl FieldTag for QSqrt3 {
    const NAME: &'static str = "K";
}
impl FieldTag for QCubic {
    const NAME: &'static str = "L";
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Nf<K: FieldTag> {
    coords: Vec<BigRational>,
    _field: PhantomData<K>,
}

impl<K: FieldTag> Nf<K> {
    /// Build from coordinates; shorter vectors are padded with zeros.
    pub fn new(mut coords: Vec<BigRational>) -> Self {
        let d = K::degree();
        assert!(coords.len() <= d, "too many coordinates for {}", K::NAME);
        coords.resize(d, BigRational::zero());
        Nf { coords, _field: PhantomData }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(vec![r])
    }

    /// The generator α.
    pub fn gen() -> Self {
        let mut c = vec![BigRational::zero(); K::degree()];
        if c.len() > 1 {
            c[1] = BigRational::one();
            Self::new(c)
        } else {
            Self::zero()
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Matrix of multiplication by `self`; column j holds `self * α^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<BigRational>> {
        let d = K::degree();
        let cols: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let mut raw = vec![BigRational::zero(); d + j];
                for (i, c) in self.coords.iter().enumerate() {
                    raw[i + j] = c.clone();
                }
                K::spec().reduce(&raw)
            })
            .collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Norm as the resultant Res(f, g) where `self = g(α)` and f is the minimal polynomial.
    pub fn norm(&self) -> BigRational {
        let f: Vec<BigRational> =
            K::spec().min_poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let g = RatPoly::new(self.coords.clone());
        if g.is_zero() {
            return BigRational::zero();
        }
        resultant(&f, g.coeffs())
    }

    /// Norm as det of the multiplication matrix; must agree with [`Nf::norm`].
    pub fn norm_by_matrix(&self) -> BigRational {
        det(&self.mul_matrix())
    }

    pub fn trace(&self) -> BigRational {
        let m = self.mul_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    pub fn apply_sigma(&self) -> Result<Self, NumberFieldError> {
        let sigma = K::spec()
            .sigma
            .as_ref()
            .ok_or_else(|| NumberFieldError::NoGaloisAction(K::NAME.to_string()))?;
        let d = K::degree();
        let mut out = vec![BigRational::zero(); d];
        for (c, img) in self.coords.iter().zip(sigma) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        Ok(Self::new(out))
    }

    /// p-adic valuation at an inert prime: min over coordinates.
    pub fn p_valuation(&self, p: u32) -> Option<i64> {
        self.coords
            .iter()
            .filter_map(|c| crate::scalar::rational_valuation(c, p))
            .min()
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumberFieldError> {
        self.checked_div(other).ok_or(NumberFieldError::DivisionByZero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.coords.iter().map(|c| c * r).collect())
    }

    /// Coordinates as strings (`"n"` or `"n/d"`), the serialization used in reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Self, NumberFieldError> {
        if s.len() != K::degree() {
            return Err(NumberFieldError::Malformed(format!(
                "{} coordinates for a degree-{} field",
                s.len(),
                K::degree()
            )));
        }
        let coords = s
            .iter()
            .map(|x| parse_rational(x).ok_or_else(|| NumberFieldError::Malformed(x.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coords))
    }
}

/// Resultant of two rational polynomials via the Sylvester determinant.
fn resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let m = f.len() - 1;
    let n = g.len() - 1;
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    let size = m + n;
    let mut s = vec![vec![BigRational::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.iter().rev().enumerate() {
            s[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.iter().rev().enumerate() {
            s[n + r][r + i] = c.clone();
        }
    }
    gauss_det(s)
}

fn gauss_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let pv = a[col][col].clone();
        d *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

impl<K: FieldTag> fmt::Debug for Nf<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: FieldTag> fmt::Display for Nf<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &K::spec().generator;
        let mut parts: Vec<String> = vec![];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => g.clone(),
                _ => format!("{g}^{i}"),
            };
            let coef = if i > 0 && c.is_one() {
                String::new()
            } else if i > 0 && (-c).is_one() {
                "-".to_string()
            } else if i > 0 && !c.is_integer() {
                format!("({c})*")
            } else if i > 0 {
                format!("{c}*")
            } else {
                c.to_string()
            };
            parts.push(format!("{coef}{mon}"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        write!(f, "{s}")
    }
}

impl<K: FieldTag> Zero for Nf<K> {
    fn zero() -> Self {
        Nf { coords: vec![BigRational::zero(); K::degree()], _field: PhantomData }
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl<K: FieldTag> One for Nf<K> {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl<K: FieldTag> Add for Nf<K> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.coords.iter_mut().zip(o.coords) {
            *a += b;
        }
        self
    }
}

impl<K: FieldTag> Sub for Nf<K> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (a, b) in self.coords.iter_mut().zip(o.coords) {
            *a -= b;
        }
        self
    }
}

impl<K: FieldTag> Neg for Nf<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Nf { coords: self.coords.into_iter().map(|c| -c).collect(), _field: PhantomData }
    }
}

impl<K: FieldTag> Mul for Nf<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = K::degree();
        let mut raw = vec![BigRational::zero(); 2 * d - 1];
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
        Nf { coords: K::spec().reduce(&raw), _field: PhantomData }
    }
}

impl<K: FieldTag> Ring for Nf<K> {
    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n.clone()))
    }
}

impl<K: FieldTag> Field for Nf<K> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.mul_matrix();
        let dt = det(&m);
        let adj = adjugate(&m);
        // x with M x = e_0 is the first column of M^-1
        let coords = adj.iter().map(|row| &row[0] / &dt).collect();
        Some(Self::new(coords))
    }
}

impl<K: FieldTag> serde::Serialize for Nf<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    type L = Nf<QCubic>;
    type K = Nf<QSqrt3>;

    #[test]
    fn registry_loads() {
        assert_eq!(QCubic::degree(), 3);
        assert_eq!(QSqrt3::degree(), 2);
        assert_eq!(Rationals::degree(), 1);
        assert!(!QCubic::spec().has_rational_root());
        assert!(!QSqrt3::spec().has_rational_root());
    }

    #[test]
    fn cubic_reduction() {
        let a = L::gen();
        let a2 = a.clone() * a.clone();
        assert_eq!(a * a2, L::from_ints(&[1, 3]));
    }

    #[test]
    fn norms() {
        assert_eq!(L::gen().norm(), rational(1, 1));
        assert_eq!(L::from_ints(&[1, 1]).norm(), rational(-1, 1));
        assert_eq!(L::from_ints(&[1, -1]).norm(), rational(-3, 1));
        let x = L::from_ints(&[3, -2, 5]);
        assert_eq!(x.norm(), x.norm_by_matrix());
        assert_eq!((K::from_ints(&[2, 1]) * K::from_ints(&[2, -1])), K::one());
    }

    #[test]
    fn inverse_and_sigma() {
        let e2 = L::from_ints(&[1, 1]);
        assert_eq!(e2.clone() * e2.inv().unwrap(), L::one());
        assert_eq!(L::gen().apply_sigma().unwrap(), L::from_ints(&[-2, -1, 1]));
        let t = L::from_ints(&[-5, 1, 1]);
        assert_eq!(t.apply_sigma().unwrap(), L::from_ints(&[-5, -2, 1]));
        assert!(K::gen().apply_sigma().is_err());
    }

    #[test]
    fn discriminants_match_annotations() {
        assert_eq!(QCubic::spec().poly_discriminant(), BigInt::from(81));
        assert_eq!(QSqrt3::spec().poly_discriminant(), BigInt::from(12));
    }

    #[test]
    fn display() {
        assert_eq!(L::from_ints(&[1, -1, -1]).to_string(), "1 - alpha - alpha^2");
        assert_eq!(K::from_ints(&[12, 4]).to_string(), "12 + 4*sqrt3");
    }
}
