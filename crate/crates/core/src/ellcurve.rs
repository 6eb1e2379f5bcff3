//! Weierstrass curves y² + a1xy + a3y = x³ + a2x² + a4x + a6 with exact point
//! arithmetic over any [`Field`], reduction at an inert prime, and the bundled
//! curve configurations.

use std::fmt;

use serde::Deserialize;

use crate::error::CurveError;
use crate::numfield::{FieldTag, Nf, Padic};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> CurvePoint<F> {
    pub fn affine(x: F, y: F) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    /// The formal-group parameter z = -x/y.
    pub fn z_coord(&self) -> Result<F, CurveError> {
        match self {
            CurvePoint::Infinity => Err(CurveError::Infinity),
            CurvePoint::Affine { x, y } => {
                let yi = y.inv().ok_or(CurveError::TwoTorsionZ)?;
                Ok(-(x.clone() * yi))
            }
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self, CurveError> {
        let c = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if c.discriminant() == F::zero() {
            return Err(CurveError::Singular);
        }
        Ok(c)
    }

    /// Same as [`WeierstrassCurve::new`] without the singularity check; used for
    /// reductions with bad reduction.
    pub fn new_unchecked(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub fn coefficients(&self) -> [F; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn discriminant(&self) -> F {
        let (a1, a2, a3, a4, a6) =
            (self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone());
        let i = |n: i64| F::from_int(n);
        let b2 = a1.square() + i(4) * a2.clone();
        let b4 = i(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.square() + i(4) * a6.clone();
        let b8 = a1.square() * a6.clone() + i(4) * a2.clone() * a6 - a1 * a3.clone() * a4.clone()
            + a2 * a3.square()
            - a4.square();
        -(b2.square() * b8) - i(8) * b4.pow(3) - i(27) * b6.square() + i(9) * b2 * b4 * b6
    }

    /// y² + a1xy + a3y - (x³ + a2x² + a4x + a6) at (x, y).
    pub fn residual(&self, x: &F, y: &F) -> F {
        let lhs = y.square() + self.a1.clone() * x.clone() * y.clone() + self.a3.clone() * y.clone();
        let rhs = x.pow(3) + self.a2.clone() * x.square() + self.a4.clone() * x.clone() + self.a6.clone();
        lhs - rhs
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.residual(x, y) == F::zero(),
        }
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y.clone() - self.a1.clone() * x.clone() - self.a3.clone(),
            },
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let (num, den) = if x1 == x2 {
            let s = y1.clone() + y2.clone() + self.a1.clone() * x2.clone() + self.a3.clone();
            if s == F::zero() {
                return CurvePoint::Infinity;
            }
            (
                F::from_int(3) * x1.square() + F::from_int(2) * self.a2.clone() * x1.clone()
                    + self.a4.clone()
                    - self.a1.clone() * y1.clone(),
                F::from_int(2) * y1.clone() + self.a1.clone() * x1.clone() + self.a3.clone(),
            )
        } else {
            (y2.clone() - y1.clone(), x2.clone() - x1.clone())
        };
        let lam = num.checked_div(&den).expect("nonzero denominator in the group law");
        let x3 = lam.square() + self.a1.clone() * lam.clone() - self.a2.clone() - x1.clone() - x2.clone();
        let y3 = -(lam * (x3.clone() - x1.clone())) - y1.clone() - self.a1.clone() * x3.clone()
            - self.a3.clone();
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        self.add(p, p)
    }

    /// k·P by double-and-add; negative k uses -P.
    pub fn scalar_mul(&self, k: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        let base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut a = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &a);
            }
            k >>= 1;
            if k > 0 {
                a = self.double(&a);
            }
        }
        acc
    }

    /// The four points O, (e, 0) for the roots e of x³ + a2x² + a4x + a6, when
    /// a1 = a3 = 0 and the supplied roots really are the roots.
    pub fn two_torsion(&self, roots: &[F]) -> Result<Vec<CurvePoint<F>>, CurveError> {
        if self.a1 != F::zero() || self.a3 != F::zero() || roots.len() != 3 {
            return Err(CurveError::NotSplit);
        }
        let sum = roots.iter().fold(F::zero(), |a, e| a + e.clone());
        let prod = roots.iter().fold(F::one(), |a, e| a * e.clone());
        let pairs = roots[0].clone() * roots[1].clone()
            + roots[0].clone() * roots[2].clone()
            + roots[1].clone() * roots[2].clone();
        if -sum != self.a2 || pairs != self.a4 || -prod != self.a6 {
            return Err(CurveError::NotSplit);
        }
        let mut out = vec![CurvePoint::Infinity];
        out.extend(roots.iter().map(|e| CurvePoint::affine(e.clone(), F::zero())));
        Ok(out)
    }
}

impl<K: FieldTag> WeierstrassCurve<Nf<K>> {
    /// Coefficients reduced into the residue field (p-adic precision 1).
    pub fn reduction<const P: u32>(&self) -> Result<WeierstrassCurve<Padic<K, P>>, CurveError> {
        let r = |a: &Nf<K>| Padic::<K, P>::lift(a, 1);
        Ok(WeierstrassCurve::new_unchecked(
            r(&self.a1)?,
            r(&self.a2)?,
            r(&self.a3)?,
            r(&self.a4)?,
            r(&self.a6)?,
        ))
    }

    /// Nonzero discriminant mod p (checked on p-integral coefficients).
    pub fn has_good_reduction<const P: u32>(&self) -> Result<bool, CurveError> {
        let red = self.reduction::<P>()?;
        Ok(!red.discriminant().indistinguishable_from_zero())
    }

    /// Reduce a point mod p: the zero point when x has negative valuation,
    /// otherwise the residues of the coordinates.
    pub fn reduce_point<const P: u32>(
        &self,
        pt: &CurvePoint<Nf<K>>,
    ) -> Result<CurvePoint<Padic<K, P>>, CurveError> {
        match pt {
            CurvePoint::Infinity => Ok(CurvePoint::Infinity),
            CurvePoint::Affine { x, y } => {
                if x.p_valuation(P).is_some_and(|v| v < 0) {
                    return Ok(CurvePoint::Infinity);
                }
                Ok(CurvePoint::affine(Padic::lift(x, 1)?, Padic::lift(y, 1)?))
            }
        }
    }

    /// Order of the reduction of `pt` in the reduced group (good reduction only).
    pub fn reduced_order<const P: u32>(&self, pt: &CurvePoint<Nf<K>>) -> Result<u64, CurveError> {
        let red = self.reduction::<P>()?;
        let r = self.reduce_point::<P>(pt)?;
        let q = (P as u64).pow(K::degree() as u32);
        let hasse = q + 1 + 2 * ((q as f64).sqrt() as u64 + 1);
        let mut acc = r.clone();
        for m in 1..=hasse {
            if acc.is_infinity() {
                return Ok(m);
            }
            acc = red.add(&acc, &r);
        }
        Err(CurveError::Malformed("reduced order exceeds the Hasse bound".into()))
    }

    /// Least m with m·pt in the kernel of reduction (v_p(x) < 0), then doubled
    /// until v_p(z(m·pt)) >= r. Works without assuming good reduction.
    pub fn kernel_multiple<const P: u32>(
        &self,
        pt: &CurvePoint<Nf<K>>,
        r: i64,
    ) -> Result<(u64, CurvePoint<Nf<K>>), CurveError> {
        let in_kernel =
            |q: &CurvePoint<Nf<K>>| q.x().map_or(true, |x| x.p_valuation(P).is_some_and(|v| v < 0));
        let mut acc = pt.clone();
        let mut m = 1u64;
        while !in_kernel(&acc) {
            acc = self.add(&acc, pt);
            m += 1;
            if m > 10_000 {
                return Err(CurveError::Malformed("no kernel multiple below 10000".into()));
            }
        }
        if acc.is_infinity() {
            return Err(CurveError::Malformed("point has finite order".into()));
        }
        while acc.z_coord()?.p_valuation(P).unwrap_or(i64::MAX) < r {
            acc = self.double(&acc);
            m *= 2;
        }
        Ok((m, acc))
    }
}

/// How the rationality condition is imposed on βx.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RationalityMode {
    /// βx must be the square of a rational number.
    RationalSquare,
    /// βx must be rational.
    Rational,
}

pub const CURVE_SCHEMA_VERSION: u32 = 1;
const CURVE_DATA: &str = include_str!("../data/curves.json");

#[derive(Deserialize)]
struct CurveFile {
    schema_version: u32,
    curves: Vec<CurveRecord>,
}

#[derive(Deserialize)]
struct PointRecord {
    x: Vec<String>,
    y: Vec<String>,
}

#[derive(Deserialize)]
struct CurveRecord {
    label: String,
    field: String,
    case: String,
    a: Vec<Vec<String>>,
    two_torsion_roots: Vec<Vec<String>>,
    torsion_order: Vec<String>,
    generator: PointRecord,
    prime: u32,
    beta: Vec<String>,
    r_range: [i64; 2],
    mode: RationalityMode,
    annotations: std::collections::BTreeMap<String, serde_json::Value>,
}

/// A curve over a number field together with its Chabauty data.
#[derive(Clone, Debug)]
pub struct CurveConfig<K: FieldTag> {
    pub label: String,
    pub case: String,
    pub curve: WeierstrassCurve<Nf<K>>,
    /// O first, then (e, 0) in the configured order.
    pub torsion: Vec<CurvePoint<Nf<K>>>,
    pub torsion_labels: Vec<String>,
    pub generator: CurvePoint<Nf<K>>,
    pub prime: u32,
    pub beta: Nf<K>,
    pub r_range: (i64, i64),
    pub mode: RationalityMode,
    pub annotations: std::collections::BTreeMap<String, serde_json::Value>,
}

impl<K: FieldTag> CurveConfig<K> {
    pub fn load(label: &str) -> Result<Self, CurveError> {
        let file: CurveFile =
            serde_json::from_str(CURVE_DATA).map_err(|e| CurveError::Malformed(e.to_string()))?;
        if file.schema_version != CURVE_SCHEMA_VERSION {
            return Err(CurveError::Malformed("unsupported curve schema version".into()));
        }
        let rec = file
            .curves
            .into_iter()
            .find(|c| c.label == label)
            .ok_or_else(|| CurveError::UnknownCurve(label.to_string()))?;
        if rec.field != K::NAME {
            return Err(CurveError::Malformed(format!(
                "{label} is defined over {}, not {}",
                rec.field,
                K::NAME
            )));
        }
        let el = |v: &[String]| {
            Nf::<K>::from_strings(v).map_err(|e| CurveError::Malformed(e.to_string()))
        };
        if rec.a.len() != 5 {
            return Err(CurveError::Malformed("need five coefficients".into()));
        }
        let a: Vec<Nf<K>> = rec.a.iter().map(|v| el(v)).collect::<Result<_, _>>()?;
        let curve = WeierstrassCurve::new(
            a[0].clone(),
            a[1].clone(),
            a[2].clone(),
            a[3].clone(),
            a[4].clone(),
        )?;
        let roots: Vec<Nf<K>> =
            rec.two_torsion_roots.iter().map(|v| el(v)).collect::<Result<_, _>>()?;
        let torsion = curve.two_torsion(&roots)?;
        let generator = CurvePoint::affine(el(&rec.generator.x)?, el(&rec.generator.y)?);
        if !curve.contains(&generator) {
            return Err(CurveError::NotOnCurve);
        }
        if rec.torsion_order.len() != torsion.len() {
            return Err(CurveError::Malformed("torsion labels do not match".into()));
        }
        Ok(CurveConfig {
            label: rec.label,
            case: rec.case,
            curve,
            torsion,
            torsion_labels: rec.torsion_order,
            generator,
            prime: rec.prime,
            beta: el(&rec.beta)?,
            r_range: (rec.r_range[0], rec.r_range[1]),
            mode: rec.mode,
            annotations: rec.annotations,
        })
    }
}

/// Rough height proxy: bit length of the largest numerator or denominator of x.
pub fn coordinate_height<K: FieldTag>(pt: &CurvePoint<Nf<K>>) -> u64 {
    match pt {
        CurvePoint::Infinity => 0,
        CurvePoint::Affine { x, .. } => x
            .coords()
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0),
    }
}

/// Exact integer coordinates helper for tests and reports.
pub fn int_point<K: FieldTag>(x: &[i64], y: &[i64]) -> CurvePoint<Nf<K>> {
    CurvePoint::affine(Nf::from_ints(x), Nf::from_ints(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{QCubic, QSqrt3};
    use crate::scalar::rational;

    #[test]
    fn configs_load() {
        let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
        assert_eq!(e1.torsion.len(), 4);
        assert!(e1.curve.has_good_reduction::<7>().unwrap());
        let e2 = CurveConfig::<QCubic>::load("E2").unwrap();
        assert_eq!(e2.torsion.len(), 4);
        assert!(!e2.curve.has_good_reduction::<2>().unwrap());
        assert!(CurveConfig::<QSqrt3>::load("E2").is_err());
    }

    #[test]
    fn kernel_multiples() {
        let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
        let (m, q) = e1.curve.kernel_multiple::<7>(&e1.generator, 1).unwrap();
        assert_eq!(m, 11);
        assert_eq!(e1.curve.reduced_order::<7>(&e1.generator).unwrap(), 11);
        assert!(q.z_coord().unwrap().p_valuation(7).unwrap() >= 1);
        let e2 = CurveConfig::<QCubic>::load("E2").unwrap();
        let (m, q) = e2.curve.kernel_multiple::<2>(&e2.generator, 2).unwrap();
        assert_eq!(m, 4);
        assert_eq!(q.z_coord().unwrap().p_valuation(2), Some(2));
    }

    #[test]
    fn z_of_generators() {
        let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
        assert_eq!(e1.generator.z_coord().unwrap(), Nf::from_rational(rational(-1, 3)));
        let e2 = CurveConfig::<QCubic>::load("E2").unwrap();
        assert_eq!(e2.generator.z_coord().unwrap(), Nf::from_ints(&[3, 0, -1]));
        assert!(e1.torsion[1].z_coord().is_err());
    }

    #[test]
    fn group_law_basics() {
        let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
        let c = &e1.curve;
        let t = &e1.torsion[1];
        assert!(c.add(t, t).is_infinity());
        let p = &e1.generator;
        assert_eq!(c.add(p, &CurvePoint::Infinity), *p);
        assert!(c.add(p, &c.neg(p)).is_infinity());
        assert!(c.scalar_mul(0, p).is_infinity());
        let s = c.add(p, t);
        assert_eq!(s, int_point::<QSqrt3>(&[12, 4], &[-36, -12]));
    }
}
