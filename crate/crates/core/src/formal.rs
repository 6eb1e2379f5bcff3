//! Formal group of a Weierstrass curve and the p-adic machinery built on it:
//! log/exp on the kernel of reduction, z(nQ) as a power series in n, the
//! θ-series of βx(P + nQ), and Strassman bounds.
//!
//! Series are first computed exactly over the number field (so the 1/k and 1/k!
//! denominators of log and exp are exact), then lifted to Z_p[α] at absolute
//! precision N. Every p-adic result carries a precision that accounts for
//! truncation of the z-series at order M and of the n-series at degree D.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ellcurve::WeierstrassCurve;
use crate::error::FormalError;
use crate::numfield::{FieldTag, Nf, Padic, Rationals, Valuation};
use crate::scalar::{big_pow, mod_inverse, valuation, Field, Ring};
use crate::series::{Series, Series2};

/// Exact formal-group data of a curve up to z-order M.
#[derive(Clone, Debug)]
pub struct FormalGroup<F: Field> {
    pub order: usize,
    /// w(z) = z³ + …, order M + 3.
    pub w: Series<F>,
    /// u = z³/w, so x = u/z² and y = -u/z³.
    pub u: Series<F>,
    /// Invariant differential ω(z) dz.
    pub omega: Series<F>,
    pub log: Series<F>,
    pub exp: Series<F>,
    /// F(z1, z2) to total degree M.
    pub law: Series2<F>,
    pub iota: Series<F>,
}

/// Solve w = z³ + a1zw + a2z²w + a3w² + a4zw² + a6w³ by fixed-point iteration.
pub fn w_series<F: Field>(c: &WeierstrassCurve<F>, order: usize) -> Series<F> {
    let z = Series::<F>::var(order);
    let z2 = z.mul(&z);
    let z3 = z2.mul(&z);
    let mut w = z3.clone();
    // each round fixes at least one more coefficient
    for _ in 0..order {
        let w2 = w.mul(&w);
        let next = z3
            .add(&z.mul(&w).scale(&c.a1))
            .add(&z2.mul(&w).scale(&c.a2))
            .add(&w2.scale(&c.a3))
            .add(&z.mul(&w2).scale(&c.a4))
            .add(&w2.mul(&w).scale(&c.a6));
        if next == w {
            break;
        }
        w = next;
    }
    w
}

impl<F: Field> FormalGroup<F> {
    pub fn new(c: &WeierstrassCurve<F>, order: usize) -> Self {
        let w = w_series(c, order + 3);
        let u = w
            .shift_down(3)
            .and_then(|s| s.inverse())
            .expect("w = z^3 (1 + ...)")
            .truncate(order);
        let z = Series::<F>::var(order);
        let z3 = z.mul(&z).mul(&z);
        let two = F::from_int(2);
        let num = u.scale(&-two.clone()).add(&z.mul(&Series::with_order(u.derivative().coeffs().to_vec(), order)));
        let den = u
            .scale(&-two)
            .add(&z.mul(&u).scale(&c.a1))
            .add(&z3.scale(&c.a3));
        let omega = num.mul(&den.inverse().expect("denominator has constant term -2"));
        let log = omega.integrate().expect("characteristic zero").truncate(order);
        let exp = log.reversion().expect("log = z + ...");
        let iota = Self::inverse_series(c, &w, order);
        let law = Self::group_law(c, &w, &iota, order);
        FormalGroup { order, w, u, omega, log, exp, law, iota }
    }

    /// ι(z) = -z / (1 - a1 z - a3 w(z)).
    fn inverse_series(c: &WeierstrassCurve<F>, w: &Series<F>, order: usize) -> Series<F> {
        let z = Series::<F>::var(order);
        let den = Series::one(order)
            .sub(&z.scale(&c.a1))
            .sub(&w.truncate(order).scale(&c.a3));
        z.neg().mul(&den.inverse().expect("unit constant term"))
    }

    /// Chord construction: the line through (z1, w(z1)) and (z2, w(z2)) meets
    /// the curve again at z3; F(z1, z2) = ι(z3).
    fn group_law(c: &WeierstrassCurve<F>, w: &Series<F>, iota: &Series<F>, order: usize) -> Series2<F> {
        let mut lam = Series2::zero(order);
        for k in 1..=order {
            let a = w.coeff(k);
            if a.is_zero() {
                continue;
            }
            for i in 0..k {
                let j = k - 1 - i;
                if i + j < order {
                    lam.set(i, j, lam.coeff(i, j) + a.clone());
                }
            }
        }
        let z1 = Series2::from_first(&Series::var(order), order);
        let z2 = Series2::from_second(&Series::var(order), order);
        let w1 = Series2::from_first(&w.truncate(order), order);
        let nu = w1.sub(&lam.mul(&z1));
        let lam2 = lam.mul(&lam);
        let lam3 = lam2.mul(&lam);
        let i = |n: i64| F::from_int(n);
        let num = lam
            .scale(&c.a1)
            .add(&lam2.scale(&c.a3))
            .sub(&nu.scale(&c.a2))
            .sub(&lam.mul(&nu).scale(&(i(2) * c.a4.clone())))
            .sub(&lam2.mul(&nu).scale(&(i(3) * c.a6.clone())));
        let den = Series2::constant(F::one(), order)
            .add(&lam.scale(&c.a2))
            .add(&lam2.scale(&c.a4))
            .add(&lam3.scale(&c.a6));
        let z3 = num
            .mul(&den.inverse().expect("unit constant term"))
            .sub(&z1)
            .sub(&z2);
        Series2::compose_into(iota, &z3)
    }

    /// β·x(P + Q(z)) for a finite point P = (xp, yp), as a power series in z.
    ///
    /// With λ = z⁻¹N/D, N = -1 - yp·w, D = 1 - xp·w/z, the sum has
    /// x = z⁻²(R² + a1 z R - (a2 + xp) z² - u) with R = N/D. The two lowest
    /// coefficients of the bracket must vanish identically.
    pub fn beta_x_sum(
        &self,
        c: &WeierstrassCurve<F>,
        xp: &F,
        yp: &F,
        beta: &F,
    ) -> Result<Series<F>, FormalError> {
        let m = self.order + 2;
        let w = self.w.truncate(m + 1);
        let n = Series::one(m).add(&w.truncate(m).scale(yp)).neg();
        let w_over_z = w.shift_down(1).ok_or(FormalError::Pole)?.truncate(m);
        let d = Series::one(m).sub(&w_over_z.scale(xp));
        let r = n.mul(&d.inverse().ok_or(FormalError::Pole)?);
        let z = Series::<F>::var(m);
        let z2 = z.mul(&z);
        let u = Series::with_order(self.u.coeffs().to_vec(), m);
        let h = r
            .mul(&r)
            .add(&z.mul(&r).scale(&c.a1))
            .sub(&z2.scale(&(c.a2.clone() + xp.clone())))
            .sub(&u);
        if h.coeff(0) != F::zero() || h.coeff(1) != F::zero() {
            return Err(FormalError::Pole);
        }
        let x = h.shift_down(2).ok_or(FormalError::Pole)?;
        Ok(x.scale(beta).truncate(self.order))
    }

    /// 1/(β·x(z)) = w(z) / (β z), a power series starting at z².
    pub fn inverse_beta_x(&self, beta: &F) -> Result<Series<F>, FormalError> {
        let bi = beta.inv().ok_or(FormalError::Pole)?;
        Ok(self.w.shift_down(1).ok_or(FormalError::Pole)?.scale(&bi).truncate(self.order))
    }
}

/// A power series in n with coefficients in Z_p[α], known to degree D, together
/// with a lower bound on the valuation of every coefficient of degree > D.
#[derive(Clone, Debug)]
pub struct NSeries<K: FieldTag, const P: u32> {
    pub coeffs: Vec<Padic<K, P>>,
    pub tail: u32,
}

/// Coordinates of a θ-series over Z_p.
pub type ZpSeries<const P: u32> = NSeries<Rationals, P>;

impl<K: FieldTag, const P: u32> NSeries<K, P> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at an integer n; precision capped by the tail bound.
    pub fn eval(&self, n: i64) -> Padic<K, P> {
        let x = Padic::<K, P>::from_int(n);
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(Padic::<K, P>::zero(), |acc, c| acc * x.clone() + c.clone());
        v.cap_precision(self.tail)
    }

    pub fn split(&self) -> Vec<ZpSeries<P>> {
        let d = K::degree();
        let parts: Vec<Vec<Padic<Rationals, P>>> =
            self.coeffs.iter().map(|c| c.split_coordinates()).collect();
        (0..d)
            .map(|i| NSeries { coeffs: parts.iter().map(|p| p[i].clone()).collect(), tail: self.tail })
            .collect()
    }

    /// Smallest precision among the stored coefficients.
    pub fn min_precision(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| c.precision()).min()
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.coeffs.iter().map(|c| c.valuation()).collect()
    }
}

/// θ_0(n) + θ_1(n)α + … + θ_{d-1}(n)α^{d-1}.
#[derive(Clone, Debug)]
pub struct ThetaVector<K: FieldTag, const P: u32> {
    pub joined: NSeries<K, P>,
    pub components: Vec<ZpSeries<P>>,
}

impl<K: FieldTag, const P: u32> ThetaVector<K, P> {
    pub fn new(joined: NSeries<K, P>) -> Self {
        let components = joined.split();
        ThetaVector { joined, components }
    }

    pub fn eval(&self, n: i64) -> Padic<K, P> {
        self.joined.eval(n)
    }

    /// Precision to which the recombined value at an integer n is certified.
    pub fn certified_precision(&self) -> u32 {
        self.joined.min_precision().unwrap_or(u32::MAX).min(self.joined.tail)
    }
}

fn floor_log(p: u32, m: usize) -> u32 {
    let mut k = 0;
    let mut x = p as usize;
    while x <= m {
        k += 1;
        x *= p as usize;
    }
    k
}

/// Divide by a nonzero integer k inside Z_p[α]: the p-part by exact division,
/// the rest by its inverse mod p^prec.
pub fn div_integer<K: FieldTag, const P: u32>(
    x: &Padic<K, P>,
    k: &BigInt,
) -> Result<Padic<K, P>, FormalError> {
    let e = valuation(k, P).expect("nonzero divisor");
    let unit = k / big_pow(P, e);
    let y = x.div_p_pow(e)?;
    let prec = y.precision().ok_or_else(|| FormalError::InsufficientPrecision {
        reason: "exact element divided by an integer".into(),
        required: 1,
        available: 0,
    })?;
    let inv = mod_inverse(&unit, &big_pow(P, prec.max(1))).expect("coprime to p");
    Ok(y.scale_int(&inv))
}

/// Horner evaluation of Σ g_j X^j where X may have a constant term of positive valuation.
fn compose_padic<K: FieldTag, const P: u32>(
    outer: &[Padic<K, P>],
    inner: &[Padic<K, P>],
) -> Vec<Padic<K, P>> {
    let n = inner.len();
    let x = Series::new(inner.to_vec());
    let mut acc = Series::<Padic<K, P>>::zero(n);
    for g in outer.iter().rev() {
        acc = acc.mul(&x);
        let c0 = acc.coeff(0) + g.clone();
        let mut v = acc.coeffs().to_vec();
        v[0] = c0;
        acc = Series::new(v);
    }
    acc.coeffs().to_vec()
}

/// The formal group lifted to Z_p[α] at precision N.
#[derive(Clone, Debug)]
pub struct PadicFormalGroup<K: FieldTag, const P: u32> {
    pub prec: u32,
    pub order: usize,
    pub exact: FormalGroup<Nf<K>>,
    omega: Vec<Padic<K, P>>,
    /// k!·E_k, integral.
    exp_scaled: Vec<Padic<K, P>>,
    law: Series2<Padic<K, P>>,
    iota: Series<Padic<K, P>>,
}

impl<K: FieldTag, const P: u32> PadicFormalGroup<K, P> {
    pub fn new(c: &WeierstrassCurve<Nf<K>>, prec: u32, order: usize) -> Result<Self, FormalError> {
        let exact = FormalGroup::new(c, order);
        Self::from_exact(exact, prec)
    }

    pub fn from_exact(exact: FormalGroup<Nf<K>>, prec: u32) -> Result<Self, FormalError> {
        let order = exact.order;
        let lift = |x: &Nf<K>| Padic::<K, P>::lift(x, prec);
        let omega = exact.omega.coeffs().iter().map(lift).collect::<Result<Vec<_>, _>>()?;
        let mut fact = BigInt::one();
        let mut exp_scaled = vec![];
        for k in 0..order {
            if k > 0 {
                fact *= k;
            }
            let e = exact.exp.coeff(k).scale(&num_rational::BigRational::from_integer(fact.clone()));
            exp_scaled.push(lift(&e)?);
        }
        let mut law = Series2::zero(order);
        for ((i, j), c) in exact.law.terms() {
            law.set(i, j, lift(&c)?);
        }
        let iota = Series::new(exact.iota.coeffs().iter().map(lift).collect::<Result<Vec<_>, _>>()?);
        Ok(PadicFormalGroup { prec, order, exact, omega, exp_scaled, law, iota })
    }

    /// Radius of the exponential: v(t) >= r with r = 1 for odd p, 2 for p = 2.
    pub fn domain() -> u32 {
        if P == 2 {
            2
        } else {
            1
        }
    }

    fn check_valuation(x: &Padic<K, P>, required: u32) -> Result<u32, FormalError> {
        let v = x.valuation().lower_bound();
        if v < required {
            return Err(FormalError::Domain { found: v, required });
        }
        Ok(v)
    }

    /// log(z) for v(z) >= 1.
    pub fn log_at(&self, z: &Padic<K, P>) -> Result<Padic<K, P>, FormalError> {
        let v = Self::check_valuation(z, 1)?;
        let mut acc = Padic::<K, P>::zero();
        let mut pw = Padic::<K, P>::one();
        for k in 1..self.order {
            pw = pw * z.clone();
            let term = self.omega[k - 1].clone() * pw.clone();
            acc = acc + div_integer(&term, &BigInt::from(k))?;
        }
        let cap = (self.order as u32).saturating_mul(v.min(self.prec)) - floor_log(P, self.order);
        Ok(acc.cap_precision(cap))
    }

    /// exp(t) for v(t) >= r.
    pub fn exp_at(&self, t: &Padic<K, P>) -> Result<Padic<K, P>, FormalError> {
        let v = Self::check_valuation(t, Self::domain())?;
        let mut acc = Padic::<K, P>::zero();
        let mut pw = Padic::<K, P>::one();
        let mut fact = BigInt::one();
        for k in 1..self.order {
            pw = pw * t.clone();
            fact *= k;
            let term = self.exp_scaled[k].clone() * pw.clone();
            acc = acc + div_integer(&term, &fact)?;
        }
        let m = self.order as u32;
        let cap = m.saturating_mul(v.min(self.prec)) - (m - 1) / (P - 1);
        Ok(acc.cap_precision(cap))
    }

    pub fn law_at(&self, z1: &Padic<K, P>, z2: &Padic<K, P>) -> Result<Padic<K, P>, FormalError> {
        let v = Self::check_valuation(z1, 1)?.min(Self::check_valuation(z2, 1)?);
        let cap = (self.order as u32).saturating_mul(v.min(self.prec));
        Ok(self.law.eval(z1, z2).cap_precision(cap))
    }

    pub fn iota_at(&self, z: &Padic<K, P>) -> Result<Padic<K, P>, FormalError> {
        let v = Self::check_valuation(z, 1)?;
        Ok(self.iota.eval(z).cap_precision((self.order as u32).saturating_mul(v.min(self.prec))))
    }

    /// z(nQ) = exp(n·log z(Q)) as a series in n up to degree `degree`.
    pub fn z_of_multiple(&self, zq: &Padic<K, P>, degree: usize) -> Result<NSeries<K, P>, FormalError> {
        if degree >= self.order {
            return Err(FormalError::InsufficientPrecision {
                reason: "n-degree must be below the series order".into(),
                required: degree as u32 + 1,
                available: self.order as u32,
            });
        }
        let l = self.log_at(zq)?;
        let vl = match l.valuation() {
            Valuation::Finite(v) => v,
            other => {
                return Err(FormalError::InsufficientPrecision {
                    reason: format!("log z(Q) has valuation {other}"),
                    required: self.prec + 1,
                    available: self.prec,
                })
            }
        };
        if vl < Self::domain() {
            return Err(FormalError::Domain { found: vl, required: Self::domain() });
        }
        let mut coeffs = vec![Padic::<K, P>::zero()];
        let mut pw = Padic::<K, P>::one();
        let mut fact = BigInt::one();
        for k in 1..=degree {
            pw = pw * l.clone();
            fact *= k;
            let c = div_integer(&(self.exp_scaled[k].clone() * pw.clone()), &fact)?;
            coeffs.push(c.cap_precision(self.prec));
        }
        let tail = (degree as u32 + 1) * vl - degree as u32 / (P - 1);
        Ok(NSeries { coeffs, tail })
    }

    /// z(P + nQ) for P in the kernel of reduction: F(z(P), z(nQ)).
    pub fn shifted_multiple(
        &self,
        zp: &Padic<K, P>,
        zn: &NSeries<K, P>,
    ) -> Result<NSeries<K, P>, FormalError> {
        let vp = Self::check_valuation(zp, 1)?;
        let ft = self.law.specialize_first(zp);
        let coeffs = compose_padic(ft.coeffs(), &zn.coeffs);
        let vz = min_valuation(&zn.coeffs[1..]);
        let cap = (self.order as u32).saturating_mul(vp.min(vz));
        Ok(NSeries { coeffs: coeffs.iter().map(|c| c.cap_precision(cap)).collect(), tail: zn.tail })
    }

    /// Compose an exact z-series G (integral coefficients) with an n-series X.
    pub fn theta(&self, g: &Series<Nf<K>>, x: &NSeries<K, P>) -> Result<ThetaVector<K, P>, FormalError> {
        let gl = g
            .coeffs()
            .iter()
            .map(|c| Padic::<K, P>::lift(c, self.prec))
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = compose_padic(&gl, &x.coeffs);
        // Stored coefficients live in Z_p[α]/p^N.
        let cap = (g.order() as u32).saturating_mul(min_valuation(&x.coeffs).min(self.prec)).min(self.prec);
        let joined = NSeries {
            coeffs: coeffs.iter().map(|c| c.cap_precision(cap)).collect(),
            tail: x.tail,
        };
        Ok(ThetaVector::new(joined))
    }
}

fn min_valuation<K: FieldTag, const P: u32>(c: &[Padic<K, P>]) -> u32 {
    c.iter().map(|x| x.valuation().lower_bound()).min().unwrap_or(u32::MAX)
}

/// Certificate from Strassman's theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrassmanCertificate {
    pub valuations: Vec<Valuation>,
    pub tail: u32,
    pub min_valuation: u32,
    /// At most this many zeros in Z_p (with multiplicity).
    pub bound: usize,
}

/// Largest index attaining the minimal coefficient valuation, provided every
/// coefficient not known exactly, and the tail, lie strictly above it.
pub fn strassman_bound<const P: u32>(
    coeffs: &[Padic<Rationals, P>],
    tail: u32,
) -> Result<StrassmanCertificate, FormalError> {
    let vals: Vec<Valuation> = coeffs.iter().map(|c| c.valuation()).collect();
    let vstar = vals.iter().filter_map(|v| v.exact()).min();
    let Some(vstar) = vstar else {
        let avail = vals.iter().map(|v| v.lower_bound()).min().unwrap_or(0);
        return Err(FormalError::InsufficientPrecision {
            reason: "no coefficient is known to be nonzero".into(),
            required: avail + 1,
            available: avail,
        });
    };
    for v in &vals {
        if let Valuation::AtLeast(q) = v {
            if *q <= vstar {
                return Err(FormalError::InsufficientPrecision {
                    reason: format!("a coefficient is only known to valuation >= {q}"),
                    required: vstar + 1,
                    available: *q,
                });
            }
        }
    }
    if tail <= vstar {
        return Err(FormalError::InsufficientPrecision {
            reason: format!("tail bound {tail} does not exceed the minimal valuation {vstar}"),
            required: vstar + 1,
            available: tail,
        });
    }
    let bound = vals.iter().rposition(|v| *v == Valuation::Finite(vstar)).unwrap();
    Ok(StrassmanCertificate { valuations: vals, tail, min_valuation: vstar, bound })
}

/// Facts about θ established by exact arithmetic rather than read off the series.
#[derive(Clone, Debug, Default)]
pub struct ExactStructure {
    /// `constant_zero[i]`: θ_i(0) = 0 exactly.
    pub constant_zero: Vec<bool>,
    /// θ is even in n (base point of order dividing 2).
    pub even: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCertificate {
    pub component: usize,
    /// Power of n divided out before applying the bound.
    pub factored_power: usize,
    pub strassman: StrassmanCertificate,
    pub known_roots: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RootsVerdict {
    Complete { roots: Vec<i64>, certificates: Vec<ComponentCertificate> },
    Incomplete { diagnostics: Vec<String>, required_precision: Option<u32> },
}

/// Bound the n ∈ Z_p with θ_i(n) = 0 for all i >= 1.
///
/// `known[i]` lists integers where θ_i vanishes, found by exact arithmetic. A
/// component certifies its root set when its Strassman bound equals the number
/// of known roots, possibly after dividing by the power of n that vanishes
/// identically. Any certified component bounds the joint root set.
pub fn rationality_roots<const P: u32>(
    components: &[ZpSeries<P>],
    known: &[Vec<i64>],
    structure: &ExactStructure,
) -> RootsVerdict {
    let mut certs = vec![];
    let mut diags = vec![];
    let mut required = None::<u32>;
    for i in 1..components.len() {
        let th = &components[i];
        let kn: BTreeSet<i64> = known.get(i).cloned().unwrap_or_default().into_iter().collect();
        match strassman_bound(&th.coeffs, th.tail) {
            Ok(c) if c.bound == kn.len() => {
                certs.push(ComponentCertificate {
                    component: i,
                    factored_power: 0,
                    strassman: c,
                    known_roots: kn.iter().copied().collect(),
                });
                continue;
            }
            Ok(c) => diags.push(format!(
                "theta_{i}: bound {} but {} known roots",
                c.bound,
                kn.len()
            )),
            Err(FormalError::InsufficientPrecision { reason, required: r, .. }) => {
                diags.push(format!("theta_{i}: {reason}"));
                required = Some(required.map_or(r, |x| x.max(r)));
            }
            Err(e) => diags.push(format!("theta_{i}: {e}")),
        }
        let mut k = 0;
        if structure.constant_zero.get(i).copied().unwrap_or(false) {
            k = if structure.even { 2 } else { 1 };
        }
        if k == 0 || k > th.coeffs.len() {
            continue;
        }
        let quotient: Vec<_> = th.coeffs[k..].to_vec();
        let nonzero: Vec<i64> = kn.iter().copied().filter(|&n| n != 0).collect();
        match strassman_bound(&quotient, th.tail) {
            Ok(c) if c.bound == nonzero.len() => certs.push(ComponentCertificate {
                component: i,
                factored_power: k,
                strassman: c,
                known_roots: kn.iter().copied().collect(),
            }),
            Ok(c) => diags.push(format!(
                "theta_{i}/n^{k}: bound {} but {} known nonzero roots",
                c.bound,
                nonzero.len()
            )),
            Err(FormalError::InsufficientPrecision { reason, required: r, .. }) => {
                diags.push(format!("theta_{i}/n^{k}: {reason}"));
                required = Some(required.map_or(r, |x| x.max(r)));
            }
            Err(e) => diags.push(format!("theta_{i}/n^{k}: {e}")),
        }
    }
    if certs.is_empty() {
        return RootsVerdict::Incomplete { diagnostics: diags, required_precision: required };
    }
    let mut roots: Option<BTreeSet<i64>> = None;
    for c in &certs {
        let s: BTreeSet<i64> = c.known_roots.iter().copied().collect();
        roots = Some(match roots {
            None => s,
            Some(r) => r.intersection(&s).copied().collect(),
        });
    }
    RootsVerdict::Complete { roots: roots.unwrap().into_iter().collect(), certificates: certs }
}

/// Unit part of a Z_p element: (v, u mod p^k) with x = p^v·u.
pub fn unit_part<const P: u32>(x: &Padic<Rationals, P>, k: u32) -> Option<(u32, BigInt)> {
    let v = x.valuation().exact()?;
    let c = &x.coords()[0] / big_pow(P, v);
    Some((v, c.mod_floor(&big_pow(P, k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::CurveConfig;
    use crate::numfield::{QCubic, QSqrt3};
    use crate::scalar::rational;

    #[test]
    fn w_and_law_low_terms() {
        let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
        let fg = FormalGroup::new(&e1.curve, 8);
        assert_eq!(fg.w.coeff(3), Nf::one());
        assert!(fg.w.coeff(4).is_zero());
        assert_eq!(fg.w.coeff(5), e1.curve.a2);
        assert_eq!(fg.law.coeff(1, 0), Nf::one());
        assert_eq!(fg.law.coeff(0, 1), Nf::one());
        assert!(fg.law.coeff(1, 1).is_zero());
        assert_eq!(fg.law.coeff(2, 1), -e1.curve.a2.clone());
        assert_eq!(fg.law.coeff(1, 2), -e1.curve.a2.clone());
        assert_eq!(fg.law, fg.law.swap());
        assert_eq!(fg.iota.coeff(1), -Nf::<QSqrt3>::one());
        for k in (0..8).step_by(2) {
            assert!(fg.log.coeff(k).is_zero());
        }
    }

    #[test]
    fn strassman_examples() {
        type Z7 = Padic<Rationals, 7>;
        let c = |x: i64| Z7::with_coords(vec![x.into()], 12);
        let cert = strassman_bound(&[c(0), c(7 * 94), c(49 * 40), c(343 * 6)], 4).unwrap();
        assert_eq!(cert.bound, 1);
        let cert = strassman_bound(&[Z7::zero(), Z7::one()], 5).unwrap();
        assert_eq!(cert.bound, 1);
        assert!(strassman_bound(&[c(0), c(49)], 2).is_err());
        assert!(strassman_bound(&[Z7::with_coords(vec![0.into()], 1), c(49)], 9).is_err());
    }

    #[test]
    fn log_exp_inverse_at_two() {
        let e2 = CurveConfig::<QCubic>::load("E2").unwrap();
        let g = PadicFormalGroup::<QCubic, 2>::new(&e2.curve, 24, 14).unwrap();
        let t = Padic::<QCubic, 2>::lift(&Nf::from_ints(&[4, 8, -4]), 24).unwrap();
        let e = g.exp_at(&t).unwrap();
        let back = g.log_at(&e).unwrap();
        assert!(back.agrees_with(&t));
        assert!(g.exp_at(&Padic::lift(&Nf::from_ints(&[2]), 24).unwrap()).is_err());
        let _ = rational(0, 1);
    }

    fn unit_parts<const P: u32>(s: &ZpSeries<P>, n: usize) -> Vec<Option<(u32, BigInt)>> {
        s.coeffs.iter().take(n).map(|c| unit_part(c, 3)).collect()
    }

    #[test]
    fn theta_e1_shifted_generator() {
        let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
        let (m, q) = e1.curve.kernel_multiple::<7>(&e1.generator, 1).unwrap();
        assert_eq!(m, 11);
        let g = PadicFormalGroup::<QSqrt3, 7>::new(&e1.curve, 12, 12).unwrap();
        let zq = Padic::lift(&q.z_coord().unwrap(), 12).unwrap();
        let zn = g.z_of_multiple(&zq, 8).unwrap();
        let base = e1.curve.add(&e1.generator, &e1.torsion[1]);
        let gs = g
            .exact
            .beta_x_sum(&e1.curve, base.x().unwrap(), base.y().unwrap(), &e1.beta)
            .unwrap();
        let th = g.theta(&gs, &zn).unwrap();
        let up = unit_parts(&th.components[1], 4);
        assert_eq!(up[1], Some((1, BigInt::from(249))));
        assert_eq!(up[2], Some((2, BigInt::from(40))));
        assert_eq!(up[3], Some((3, BigInt::from(316))));
    }

    #[test]
    fn theta_e2_kernel_translate() {
        let e2 = CurveConfig::<QCubic>::load("E2").unwrap();
        let (m, q) = e2.curve.kernel_multiple::<2>(&e2.generator, 2).unwrap();
        assert_eq!(m, 4);
        let g = PadicFormalGroup::<QCubic, 2>::new(&e2.curve, 24, 16).unwrap();
        let zq = Padic::lift(&q.z_coord().unwrap(), 24).unwrap();
        let zn = g.z_of_multiple(&zq, 8).unwrap();
        let base = e2.curve.add(&e2.curve.double(&e2.generator), &e2.torsion[2]);
        let gs = g
            .exact
            .beta_x_sum(&e2.curve, base.x().unwrap(), base.y().unwrap(), &e2.beta)
            .unwrap();
        let th = g.theta(&gs, &zn).unwrap();
        let v: Vec<Valuation> = th.components[1].valuations();
        eprintln!("{v:?} tail {}", th.components[1].tail);
        assert_eq!(&v[1..5], &[Valuation::Finite(6), Valuation::Finite(6), Valuation::Finite(9), Valuation::Finite(8)]);
        let c = strassman_bound(&th.components[1].coeffs, th.components[1].tail).unwrap();
        assert_eq!(c.bound, 2);
    }
}
