//! Descent for U_12 = □ and U_9 = □: the factor forms, the sign/multiplier
//! systems they split into, local (real and congruence) solvability, and the
//! auxiliary point searches used as rank evidence.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ellcurve::{CurvePoint, WeierstrassCurve};
use crate::lucas::LucasParams;
use crate::poly::RatPoly;
use crate::scalar::rational_sqrt;

/// Homogeneous forms in (P, Q) with P of weight 1 and Q of weight 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Form {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "P^2-3Q")]
    P2Minus3Q,
    #[serde(rename = "P^2-2Q")]
    P2Minus2Q,
    #[serde(rename = "P^2-Q")]
    P2MinusQ,
    #[serde(rename = "P^4-4P^2Q+Q^2")]
    Quartic,
    #[serde(rename = "P^6-6P^4Q+9P^2Q^2-Q^3")]
    Sextic,
}

impl Form {
    pub const U12: [Form; 5] = [Form::P, Form::P2Minus3Q, Form::P2Minus2Q, Form::P2MinusQ, Form::Quartic];

    pub fn label(self) -> &'static str {
        match self {
            Form::P => "P",
            Form::P2Minus3Q => "P^2-3Q",
            Form::P2Minus2Q => "P^2-2Q",
            Form::P2MinusQ => "P^2-Q",
            Form::Quartic => "P^4-4P^2Q+Q^2",
            Form::Sextic => "P^6-6P^4Q+9P^2Q^2-Q^3",
        }
    }

    /// Degree in P when Q is given weight 2.
    pub fn weight(self) -> u32 {
        match self {
            Form::P => 1,
            Form::P2Minus3Q | Form::P2Minus2Q | Form::P2MinusQ => 2,
            Form::Quartic => 4,
            Form::Sextic => 6,
        }
    }

    /// g with form(P, Q) = P^weight · g(Q/P²), coefficients low to high.
    pub fn dehomogenized(self) -> RatPoly {
        RatPoly::from_ints(match self {
            Form::P => &[1],
            Form::P2Minus3Q => &[1, -3],
            Form::P2Minus2Q => &[1, -2],
            Form::P2MinusQ => &[1, -1],
            Form::Quartic => &[1, -4, 1],
            Form::Sextic => &[1, -6, 9, -1],
        })
    }

    pub fn eval(self, p: &BigInt, q: &BigInt) -> BigInt {
        let p2 = p * p;
        match self {
            Form::P => p.clone(),
            Form::P2Minus3Q => &p2 - q * 3,
            Form::P2Minus2Q => &p2 - q * 2,
            Form::P2MinusQ => &p2 - q,
            Form::Quartic => &p2 * &p2 - &p2 * q * 4 + q * q,
            Form::Sextic => {
                let p4 = &p2 * &p2;
                &p4 * &p2 - &p4 * q * 6 + &p2 * q * q * 9 - q * q * q
            }
        }
    }

    pub fn eval_i64(self, p: i64, q: i64) -> BigInt {
        self.eval(&BigInt::from(p), &BigInt::from(q))
    }

    /// Value modulo m for residues p, q.
    pub fn eval_mod(self, p: u64, q: u64, m: u64) -> u64 {
        let v = self.eval(&BigInt::from(p), &BigInt::from(q));
        let r = v.mod_floor(&BigInt::from(m));
        u64::try_from(&r).expect("fits")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// form(P, Q) = multiplier · □ with □ the square of a nonzero rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Condition {
    pub form: Form,
    pub multiplier: i64,
}

impl Condition {
    pub fn new(form: Form, multiplier: i64) -> Self {
        assert!(ALLOWED_MULTIPLIERS.contains(&multiplier), "multiplier {multiplier}");
        Condition { form, multiplier }
    }

    /// Holds at the integer point (P, Q).
    pub fn holds(&self, p: &BigInt, q: &BigInt) -> bool {
        is_multiple_of_square(&self.form.eval(p, q), self.multiplier)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.multiplier {
            1 => String::new(),
            -1 => "-".into(),
            k => k.to_string(),
        };
        write!(f, "{} = {m}□", self.form)
    }
}

pub const ALLOWED_MULTIPLIERS: [i64; 8] = [1, -1, 2, -2, 3, -3, 6, -6];

/// v = m·s² with s a nonzero rational.
pub fn is_multiple_of_square(v: &BigInt, m: i64) -> bool {
    if v.is_zero() {
        return false;
    }
    let m = BigInt::from(m);
    let (quo, rem) = v.div_rem(&m);
    rem.is_zero() && !quo.is_negative() && crate::scalar::integer_sqrt(&quo).is_some()
}

/// Rational version of [`is_multiple_of_square`].
pub fn is_rational_multiple_of_square(v: &BigRational, m: i64) -> bool {
    if v.is_zero() {
        return false;
    }
    rational_sqrt(&(v / BigRational::from_integer(m.into()))).is_some()
}

/// A conjunction of conditions; gcd(P, Q) = 1 is always implied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ConstraintSystem {
    pub conditions: Vec<Condition>,
}

impl ConstraintSystem {
    pub fn new(conditions: Vec<Condition>) -> Self {
        ConstraintSystem { conditions }
    }

    pub fn multiplier(&self, form: Form) -> Option<i64> {
        self.conditions.iter().find(|c| c.form == form).map(|c| c.multiplier)
    }

    pub fn contains(&self, c: &Condition) -> bool {
        self.conditions.contains(c)
    }

    pub fn holds(&self, p: i64, q: i64) -> bool {
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        self.conditions.iter().all(|c| c.holds(&p, &q))
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut c = self.conditions.clone();
        c.extend(other.conditions.iter().copied());
        ConstraintSystem { conditions: c }
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.conditions.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolvabilityVerdict {
    /// No real (P, Q) gives every form its required sign.
    RealUnsolvable { reason: String },
    /// No residue pair mod `modulus` (not both divisible by its prime) works.
    CongruenceUnsolvable { modulus: u64 },
    Survives { witness: Option<(i64, i64)> },
}

impl SolvabilityVerdict {
    pub fn survives(&self) -> bool {
        matches!(self, SolvabilityVerdict::Survives { .. })
    }
}

pub const DEFAULT_MODULI: [u64; 6] = [16, 9, 5, 7, 11, 13];

/// (P, P²-3Q, P²-2Q, P²-Q, P⁴-4P²Q+Q²); the product is U_12.
pub fn factor_u12(params: LucasParams) -> [BigInt; 5] {
    let (p, q) = (BigInt::from(params.p_coef), BigInt::from(params.q_coef));
    Form::U12.map(|f| f.eval(&p, &q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdBound {
    /// gcd(P(P²-3Q)(P²-Q), (P²-2Q)(P⁴-4P²Q+Q²)), the two halves of U_12.
    #[serde(serialize_with = "crate::report::as_string")]
    pub halves: BigInt,
    /// gcd(P(P²-3Q), P⁴-4P²Q+Q²).
    #[serde(serialize_with = "crate::report::as_string")]
    pub cofactor: BigInt,
}

impl GcdBound {
    pub fn divides_two(&self) -> bool {
        let two = BigInt::from(2);
        two.is_multiple_of(&self.halves) && two.is_multiple_of(&self.cofactor)
    }
}

pub fn pairwise_gcd_bound(params: LucasParams) -> GcdBound {
    let [p, a, b, c, d] = factor_u12(params);
    let left = &p * &a * &c;
    let right = &b * &d;
    GcdBound { halves: left.gcd(&right), cofactor: (&p * &a).gcd(&d) }
}

/// P(P²-3Q)(P²-Q) = 2□ split into three conditions, and
/// (P²-2Q)(P⁴-4P²Q+Q²) = 2□ split into two, for every δ, η ∈ {±1, ±3}.
/// Triples come first, grouped by δ; then the pairs, grouped by η.
pub fn enumerate_u12_systems() -> Vec<ConstraintSystem> {
    let mut out = vec![];
    let cond = |f, m| Condition::new(f, m);
    for d in [1, -1, 3, -3] {
        for (a, b, c) in [(d, 2 * d, 1), (d, -2 * d, -1), (2 * d, d, 1), (2 * d, -d, -1), (d, d, 2), (d, -d, -2)] {
            out.push(ConstraintSystem::new(vec![
                cond(Form::P, a),
                cond(Form::P2Minus3Q, b),
                cond(Form::P2MinusQ, c),
            ]));
        }
    }
    for e in [1, -1, 3, -3] {
        for (a, b) in [(e, 2 * e), (2 * e, e)] {
            out.push(ConstraintSystem::new(vec![cond(Form::P2Minus2Q, a), cond(Form::Quartic, b)]));
        }
    }
    out
}

/// Sign feasibility over the reals.
pub fn real_solvable(system: &ConstraintSystem) -> bool {
    // P = 0 forces Q = ±1 for coprime pairs
    for q in [1i64, -1] {
        if system.conditions.iter().all(|c| {
            let v = c.form.eval_i64(0, q);
            !v.is_zero() && v.signum() == BigInt::from(c.multiplier.signum())
        }) {
            return true;
        }
    }
    // P ≠ 0: signs are determined by sign(P) and g(x), x = Q/P²
    let mut prod = RatPoly::from_ints(&[1]);
    for c in &system.conditions {
        prod = prod.mul(&c.form.dehomogenized());
    }
    let roots = prod.squarefree().isolate_real_roots();
    let mut tests = vec![];
    if roots.is_empty() {
        tests.push(BigRational::zero());
    } else {
        tests.push(&roots[0].lo - BigRational::one());
        tests.push(&roots[roots.len() - 1].hi + BigRational::one());
        for w in roots.windows(2) {
            tests.push((&w[0].hi + &w[1].lo) / BigRational::from_integer(2.into()));
        }
    }
    for x in &tests {
        for sp in [1i64, -1] {
            let ok = system.conditions.iter().all(|c| {
                let g = c.form.dehomogenized().eval(x);
                if g.is_zero() {
                    return false;
                }
                let s = if c.form.weight() % 2 == 1 { sp } else { 1 };
                let sign = if g.is_positive() { s } else { -s };
                sign == c.multiplier.signum()
            });
            if ok {
                return true;
            }
        }
    }
    false
}

fn prime_of(m: u64) -> u64 {
    (2..=m).find(|d| m % d == 0).expect("m > 1")
}

/// Residue pairs (P, Q) mod m, not both divisible by the prime of m, at which
/// every condition is a multiplier times a square mod m.
pub fn residue_solutions(system: &ConstraintSystem, m: u64) -> Vec<(u64, u64)> {
    let l = prime_of(m);
    let squares: BTreeSet<u64> = (0..m).map(|s| s * s % m).collect();
    let allowed: Vec<BTreeSet<u64>> = system
        .conditions
        .iter()
        .map(|c| {
            let k = c.multiplier.rem_euclid(m as i64) as u64;
            squares.iter().map(|s| s * k % m).collect()
        })
        .collect();
    let mut out = vec![];
    for p in 0..m {
        for q in 0..m {
            if p % l == 0 && q % l == 0 {
                continue;
            }
            if system
                .conditions
                .iter()
                .zip(&allowed)
                .all(|(c, a)| a.contains(&c.form.eval_mod(p, q, m)))
            {
                out.push((p, q));
            }
        }
    }
    out
}

/// Smallest coprime (P, Q) with |P|, |Q| <= bound satisfying the system exactly.
pub fn small_witness(system: &ConstraintSystem, bound: i64) -> Option<(i64, i64)> {
    let mut cands: Vec<(i64, i64)> = vec![];
    for p in -bound..=bound {
        for q in -bound..=bound {
            if p.gcd(&q) == 1 {
                cands.push((p, q));
            }
        }
    }
    cands.sort_by_key(|&(p, q)| (p.abs().max(q.abs()), p.abs(), q.abs(), -p, -q));
    cands.into_iter().find(|&(p, q)| system.holds(p, q))
}

pub fn local_solvability(system: &ConstraintSystem, moduli: &[u64]) -> SolvabilityVerdict {
    assert!(!moduli.is_empty());
    if !real_solvable(system) {
        return SolvabilityVerdict::RealUnsolvable {
            reason: "no real (P, Q) gives every form the sign of its multiplier".into(),
        };
    }
    for &m in moduli {
        if residue_solutions(system, m).is_empty() {
            return SolvabilityVerdict::CongruenceUnsolvable { modulus: m };
        }
    }
    SolvabilityVerdict::Survives { witness: small_witness(system, 10) }
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemVerdict {
    pub system: ConstraintSystem,
    pub verdict: SolvabilityVerdict,
    pub moduli: Vec<u64>,
}

/// Verdicts for all raw systems, in enumeration order.
pub fn u12_system_verdicts() -> Vec<SystemVerdict> {
    enumerate_u12_systems()
        .into_iter()
        .map(|s| SystemVerdict {
            verdict: local_solvability(&s, &DEFAULT_MODULI),
            system: s,
            moduli: DEFAULT_MODULI.to_vec(),
        })
        .collect()
}

const CLASS_ORDER: [i64; 8] = [1, -1, 2, -2, 3, -3, 6, -6];

/// Locally solvable combinations of a surviving triple and a surviving pair,
/// columns (P, P²-3Q, P²-Q, P²-2Q, P⁴-4P²Q+Q²), ordered by the P²-Q class
/// (□, -□, 2□, …) and then by the multiplier of P.
pub fn surviving_u12_table() -> Vec<ConstraintSystem> {
    let verdicts = u12_system_verdicts();
    let (triples, pairs): (Vec<_>, Vec<_>) = verdicts
        .into_iter()
        .filter(|v| v.verdict.survives())
        .map(|v| v.system)
        .partition(|s| s.conditions.len() == 3);
    let mut rows = vec![];
    for t in &triples {
        for p in &pairs {
            let s = t.join(p);
            if local_solvability(&s, &DEFAULT_MODULI).survives() {
                rows.push(s);
            }
        }
    }
    let class = |s: &ConstraintSystem| {
        let m = s.multiplier(Form::P2MinusQ).unwrap();
        CLASS_ORDER.iter().position(|&c| c == m).unwrap()
    };
    rows.sort_by_key(|s| (class(s), s.multiplier(Form::P).unwrap()));
    rows
}

/// Multipliers of a table row in column order.
pub fn row_multipliers(row: &ConstraintSystem) -> [i64; 5] {
    [Form::P, Form::P2Minus3Q, Form::P2MinusQ, Form::P2Minus2Q, Form::Quartic]
        .map(|f| row.multiplier(f).expect("complete row"))
}

/// 3u²-1 = 2□, 4u²-1 = 3□, 2u⁴+2u²-1 = 3□.
pub fn genus9_check(u: &BigRational) -> bool {
    let u2 = u * u;
    let int = |k: i64| BigRational::from_integer(k.into());
    let a = &u2 * int(3) - int(1);
    let b = &u2 * int(4) - int(1);
    let c = &u2 * &u2 * int(2) + &u2 * int(2) - int(1);
    is_rational_multiple_of_square(&a, 2)
        && is_rational_multiple_of_square(&b, 3)
        && is_rational_multiple_of_square(&c, 3)
}

/// Binary sextic Σ c_k P^(6-2k) R^(2k), k = 0..=3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenSextic {
    pub coeffs: [i64; 4],
}

impl EvenSextic {
    pub fn eval(&self, p: &BigInt, r: &BigInt) -> BigInt {
        let (p2, r2) = (p * p, r * r);
        (0..4).fold(BigInt::zero(), |acc, k| {
            acc + BigInt::from(self.coeffs[k]) * p2.pow(3 - k as u32) * r2.pow(k as u32)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct U9Split {
    pub delta: i64,
    /// Q = P² - δR².
    pub substitution: String,
    /// (3/δ)P⁶ - 9P⁴R² + 6δP²R⁴ + δ²R⁶ = □.
    pub sextic: EvenSextic,
}

impl U9Split {
    pub fn q_of(&self, p: &BigInt, r: &BigInt) -> BigInt {
        p * p - BigInt::from(self.delta) * r * r
    }
}

/// The norm-form split of U_9 = □ after P² - Q = δR², δ = ±3.
pub fn u9_norm_split(delta: i64) -> Option<U9Split> {
    if delta.abs() != 3 {
        return None;
    }
    Some(U9Split {
        delta,
        substitution: format!("Q = P^2 - ({delta})R^2"),
        sextic: EvenSextic { coeffs: [3 / delta, -9, 6 * delta, delta * delta] },
    })
}

/// y² = m·f(x) searched over x = a/b.
#[derive(Clone, Debug)]
pub struct AuxCurve {
    pub label: String,
    pub f: RatPoly,
    pub multiplier: i64,
}

impl AuxCurve {
    /// (1 - 2x)(1 - 4x + x²) = δ□ with x = Q/P².
    pub fn u12_companion(delta: i64) -> Self {
        AuxCurve {
            label: format!("(1-2x)(1-4x+x^2) = {delta}□"),
            f: RatPoly::from_ints(&[1, -2]).mul(&RatPoly::from_ints(&[1, -4, 1])),
            multiplier: delta,
        }
    }

    /// Weierstrass model Y² = X³ + δc2X² + δ²c3c1X + δ³c3²c0 of δy² = f(x) via
    /// X = δc3·x, Y = δ²c3·y (f cubic).
    pub fn weierstrass(&self) -> Option<(WeierstrassCurve<BigRational>, BigRational)> {
        let c = self.f.coeffs();
        if c.len() != 4 {
            return None;
        }
        let d = BigRational::from_integer(self.multiplier.into());
        let c3 = c[3].clone();
        let curve = WeierstrassCurve::new(
            BigRational::zero(),
            &d * &c[2],
            BigRational::zero(),
            &d * &d * &c3 * &c[1],
            &d * &d * &d * &c3 * &c3 * &c[0],
        )
        .ok()?;
        Some((curve, &d * c3))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxPointKind {
    /// f(x) = 0: a point of order 2, excluded by the nonzero-□ convention.
    ZeroValue,
    Torsion { order: u32 },
    NonTorsion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxPoint {
    #[serde(serialize_with = "crate::report::as_string")]
    pub x: BigRational,
    #[serde(serialize_with = "crate::report::as_string")]
    pub value: BigRational,
    pub kind: AuxPointKind,
}

/// Order of a point on a curve over Q, if it is at most 12.
pub fn small_order(c: &WeierstrassCurve<BigRational>, pt: &CurvePoint<BigRational>) -> Option<u32> {
    let mut acc = pt.clone();
    for k in 1..=12u32 {
        if acc.is_infinity() {
            return Some(k);
        }
        acc = c.add(&acc, pt);
        if acc.is_infinity() {
            return Some(k + 1).filter(|&o| o <= 12);
        }
    }
    None
}

/// Rational x = a/b with |a|, |b| <= height where f(x) is zero or δ times a
/// nonzero square; nonzero hits are classified by their order on the
/// Weierstrass model. Sorted by x.
pub fn small_point_search(curve: &AuxCurve, height: i64) -> Vec<AuxPoint> {
    let mut xs = BTreeSet::new();
    for b in 1..=height {
        for a in -height..=height {
            if a.gcd(&b) == 1 {
                xs.insert(BigRational::new(a.into(), b.into()));
            }
        }
    }
    let model = curve.weierstrass();
    let mut out = vec![];
    for x in xs {
        let value = curve.f.eval(&x);
        let kind = if value.is_zero() {
            AuxPointKind::ZeroValue
        } else if is_rational_multiple_of_square(&value, curve.multiplier) {
            match &model {
                Some((w, scale)) => {
                    let d = BigRational::from_integer(curve.multiplier.into());
                    let y = rational_sqrt(&(&value / &d)).unwrap();
                    let pt = CurvePoint::affine(scale * &x, &d * scale * y);
                    debug_assert!(w.contains(&pt));
                    match small_order(w, &pt) {
                        Some(order) => AuxPointKind::Torsion { order },
                        None => AuxPointKind::NonTorsion,
                    }
                }
                None => AuxPointKind::NonTorsion,
            }
        } else {
            continue;
        };
        out.push(AuxPoint { x, value, kind });
    }
    out
}

/// Survival report for the U_12 descent.
#[derive(Clone, Debug, Serialize)]
pub struct DescentReport {
    pub moduli: Vec<u64>,
    pub systems: Vec<SystemVerdict>,
    pub table: Vec<[i64; 5]>,
    pub table_columns: [&'static str; 5],
    pub genus9_system: [&'static str; 3],
    pub companions: Vec<CompanionEvidence>,
    pub u9_splits: Vec<U9Split>,
    pub trusted: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompanionEvidence {
    pub curve: String,
    pub height: i64,
    pub points: Vec<AuxPoint>,
    pub non_torsion_found: bool,
}

pub fn companion_evidence(height: i64) -> Vec<CompanionEvidence> {
    [2, -1, 1, -2]
        .into_iter()
        .map(|d| {
            let c = AuxCurve::u12_companion(d);
            let points = small_point_search(&c, height);
            CompanionEvidence {
                non_torsion_found: points.iter().any(|p| p.kind == AuxPointKind::NonTorsion),
                curve: c.label,
                height,
                points,
            }
        })
        .collect()
}

pub fn descent_report(height: i64) -> DescentReport {
    DescentReport {
        moduli: DEFAULT_MODULI.to_vec(),
        systems: u12_system_verdicts(),
        table: surviving_u12_table().iter().map(row_multipliers).collect(),
        table_columns: ["P", "P^2-3Q", "P^2-Q", "P^2-2Q", "P^4-4P^2Q+Q^2"],
        genus9_system: ["3u^2-1 = 2□", "4u^2-1 = 3□", "2u^4+2u^2-1 = 3□"],
        companions: companion_evidence(height),
        u9_splits: [3, -3].into_iter().filter_map(u9_norm_split).collect(),
        trusted: vec![
            "rank 0 of the companion curves with delta in {-1, 1, -2}: point-search evidence only",
            "local unsolvability above 3 of the epsilon = 2+sqrt3 case",
            "rank 0 of the delta = +-1 norm-form curves for U_9",
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn factors() {
        let f = factor_u12(LucasParams::new(1, -1).unwrap());
        assert_eq!(f, [1, 4, 3, 2, 6].map(BigInt::from));
        let f = factor_u12(LucasParams::new(1, 1).unwrap());
        assert_eq!(f, [1, -2, -1, 0, -2].map(BigInt::from));
        let f = factor_u12(LucasParams::new(2, 1).unwrap());
        assert_eq!(f, [2, 1, 2, 3, 1].map(BigInt::from));
    }

    #[test]
    fn gcds() {
        let g = pairwise_gcd_bound(LucasParams::new(1, -1).unwrap());
        assert_eq!(g.cofactor, BigInt::from(2));
        assert!(g.divides_two());
    }

    #[test]
    fn genus9() {
        assert!(genus9_check(&rational(1, 1)));
        assert!(!genus9_check(&rational(1, 2)));
        assert!(!genus9_check(&rational(0, 1)));
    }

    #[test]
    fn norm_split() {
        let s = u9_norm_split(3).unwrap();
        let e = |p: i64, r: i64| s.sextic.eval(&p.into(), &r.into());
        assert_eq!(e(1, 0), BigInt::from(1));
        assert_eq!(e(0, 1), BigInt::from(9));
        assert_eq!(e(2, 1), BigInt::from(1));
        assert_eq!(u9_norm_split(-3).unwrap().sextic.coeffs, [-1, -9, -18, 9]);
        assert!(u9_norm_split(1).is_none());
    }

    #[test]
    fn real_check() {
        let s = ConstraintSystem::new(vec![
            Condition::new(Form::P2MinusQ, -1),
            Condition::new(Form::P2Minus2Q, 1),
        ]);
        assert!(!real_solvable(&s));
        let s = ConstraintSystem::new(vec![Condition::new(Form::Quartic, -1)]);
        assert!(real_solvable(&s));
    }

    #[test]
    fn table_and_companions() {
        let t: Vec<[i64; 5]> = surviving_u12_table().iter().map(row_multipliers).collect();
        assert_eq!(t, vec![[-1, -2, 1, -1, -2], [6, 3, 1, 2, 1], [1, -2, -1, -1, -2], [1, 1, 2, 3, 6]]);
        assert_eq!(enumerate_u12_systems().len(), 32);
        let ev = companion_evidence(20);
        assert_eq!(ev.iter().map(|e| e.non_torsion_found).collect::<Vec<_>>(), [true, false, false, false]);
        let v = u12_system_verdicts();
        assert_eq!(v.iter().filter(|x| x.verdict.survives()).count(), 10);
    }
}
