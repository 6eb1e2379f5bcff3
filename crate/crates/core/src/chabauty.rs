//! Elliptic Chabauty over the bundled curves: enumerate the cosets rP + T of
//! the kernel subgroup, bound the n with βx(rP + T + nQ) rational by the
//! θ-series, and turn the surviving x back into Lucas parameters.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::descent::genus9_check;
use crate::ellcurve::{CurveConfig, CurvePoint, RationalityMode, WeierstrassCurve};
use crate::error::{CurveError, FormalError};
use crate::formal::{
    rationality_roots, unit_part, ExactStructure, FormalGroup, NSeries, PadicFormalGroup,
    RootsVerdict, ThetaVector,
};
use crate::lucas::{lucas_u, square_root_if_square, LucasParams};
use crate::numfield::{FieldTag, Nf, Padic, QCubic, QSqrt3, Valuation};
use crate::scalar::{rational_sqrt, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseLabel {
    U12,
    U9,
}

impl CaseLabel {
    pub fn curve_label(self) -> &'static str {
        match self {
            CaseLabel::U12 => "E1",
            CaseLabel::U9 => "E2",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::U12 => "u12",
            CaseLabel::U9 => "u9",
        }
    }
}

impl FromStr for CaseLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "u12" => Ok(CaseLabel::U12),
            "u9" => Ok(CaseLabel::U9),
            _ => Err(format!("unknown case {s} (expected u12 or u9)")),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Working precision: p-adic digits N, z-series order M, n-degree D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPlan {
    pub digits: u32,
    pub order: usize,
    pub degree: usize,
    /// Retry uncertified cosets at higher precision.
    pub escalate: bool,
}

const MAX_ESCALATIONS: usize = 3;

impl PrecisionPlan {
    pub fn default_for(p: u32) -> Self {
        match p {
            2 => PrecisionPlan { digits: 24, order: 16, degree: 8, escalate: true },
            _ => PrecisionPlan { digits: 12, order: 12, degree: 8, escalate: true },
        }
    }

    /// Fixed precision N with the default series orders; no escalation.
    pub fn fixed(p: u32, digits: u32, order: Option<usize>) -> Self {
        let mut plan = Self::default_for(p);
        plan.digits = digits;
        if let Some(m) = order {
            plan.order = m;
            plan.degree = plan.degree.min(m.saturating_sub(1));
        }
        plan.escalate = false;
        plan
    }

    fn escalated(self) -> Self {
        PrecisionPlan {
            digits: self.digits + self.digits / 2,
            order: self.order + 4,
            degree: self.degree + 2,
            escalate: self.escalate,
        }
    }
}

/// A bundled curve with its kernel data.
#[derive(Clone, Debug)]
pub struct ChabautyCase<K: FieldTag, const P: u32> {
    pub label: CaseLabel,
    pub config: CurveConfig<K>,
    /// Q = m·generator lies in the domain of the formal exponential.
    pub m: u64,
    pub q: CurvePoint<Nf<K>>,
    pub zq: Nf<K>,
}

impl<K: FieldTag, const P: u32> ChabautyCase<K, P> {
    pub fn load(label: CaseLabel) -> Result<Self, CurveError> {
        let config = CurveConfig::<K>::load(label.curve_label())?;
        if config.prime != P {
            return Err(CurveError::Malformed(format!("{} is configured at p = {}", config.label, config.prime)));
        }
        crate::numfield::inertness_certificate::<K>(P)?;
        let beta = Padic::<K, P>::lift(&config.beta, 1)?;
        if !beta.is_unit() {
            return Err(CurveError::Malformed("beta is not a p-adic unit".into()));
        }
        let r = PadicFormalGroup::<K, P>::domain() as i64;
        let (m, q) = config.curve.kernel_multiple::<P>(&config.generator, r)?;
        let zq = q.z_coord()?;
        let (lo, hi) = config.r_range;
        let residues: BTreeSet<i64> = (lo..=hi).map(|r| r.rem_euclid(m as i64)).collect();
        if residues.len() as u64 != m || (hi - lo + 1) as u64 != m {
            return Err(CurveError::Malformed(format!(
                "r-range {lo}..{hi} is not a complete residue system mod {m}"
            )));
        }
        Ok(ChabautyCase { label, config, m, q, zq })
    }

    fn curve(&self) -> &WeierstrassCurve<Nf<K>> {
        &self.config.curve
    }

    /// Base points rP + T in (r, T) order.
    pub fn enumerate_cosets(&self) -> Vec<Coset<K>> {
        let c = self.curve();
        let (lo, hi) = self.config.r_range;
        let mut out = vec![];
        for r in lo..=hi {
            let rp = c.scalar_mul(r, &self.config.generator);
            for (t, label) in self.config.torsion.iter().zip(&self.config.torsion_labels) {
                out.push(Coset { r, torsion: label.clone(), base: c.add(&rp, t) });
            }
        }
        out
    }

    fn kind_of(&self, pt: &CurvePoint<Nf<K>>) -> BaseKind {
        match pt.x() {
            None => BaseKind::Infinity,
            Some(x) if x.p_valuation(P).is_some_and(|v| v < 0) => BaseKind::Kernel,
            Some(_) => BaseKind::Finite,
        }
    }

    /// The quantity expanded in n: βx for finite bases, 1/(βx) otherwise.
    fn exact_value(&self, kind: BaseKind, pt: &CurvePoint<Nf<K>>) -> Option<Nf<K>> {
        let beta = &self.config.beta;
        match (kind, pt) {
            (BaseKind::Finite, CurvePoint::Affine { x, .. }) => Some(beta.clone() * x.clone()),
            (BaseKind::Finite, CurvePoint::Infinity) => None,
            (_, CurvePoint::Infinity) => Some(Nf::zero()),
            (_, CurvePoint::Affine { x, .. }) => (beta.clone() * x.clone()).inv(),
        }
    }

    fn theta(
        &self,
        fg: &PadicFormalGroup<K, P>,
        kind: BaseKind,
        base: &CurvePoint<Nf<K>>,
        degree: usize,
    ) -> Result<ThetaVector<K, P>, FormalError> {
        let zq = Padic::<K, P>::lift(&self.zq, fg.prec)?;
        let zn = fg.z_of_multiple(&zq, degree)?;
        let beta = &self.config.beta;
        match (kind, base) {
            (BaseKind::Infinity, _) => fg.theta(&fg.exact.inverse_beta_x(beta)?, &zn),
            (BaseKind::Kernel, pt) => {
                let zp = Padic::<K, P>::lift(&pt.z_coord()?, fg.prec)?;
                let x = fg.shifted_multiple(&zp, &zn)?;
                fg.theta(&fg.exact.inverse_beta_x(beta)?, &x)
            }
            (BaseKind::Finite, CurvePoint::Affine { x, y }) => {
                fg.theta(&fg.exact.beta_x_sum(self.curve(), x, y, beta)?, &zn)
            }
            (BaseKind::Finite, CurvePoint::Infinity) => unreachable!(),
        }
    }

    /// Full per-coset analysis at one precision.
    pub fn analyze_coset(
        &self,
        fg: &PadicFormalGroup<K, P>,
        plan: PrecisionPlan,
        coset: &Coset<K>,
        multiples: &[(i64, CurvePoint<Nf<K>>)],
    ) -> CosetReport {
        let c = self.curve();
        let base = &coset.base;
        let kind = self.kind_of(base);
        let v0 = self.exact_value(kind, base).expect("base value");
        let d = K::degree();
        let mut report = CosetReport {
            r: coset.r,
            torsion: coset.torsion.clone(),
            base_point: base.to_string(),
            base_kind: kind,
            expanded: match kind {
                BaseKind::Finite => "beta*x",
                _ => "1/(beta*x)",
            },
            theta_at_zero: v0.to_strings(),
            outcome: CosetOutcome::Uncertified { diagnostics: vec![], required_precision: None },
            theta: vec![],
            roots: None,
            cross_check: None,
            survivors: vec![],
        };

        // (1) a unit constant term in some θ_i, i >= 1
        for i in 1..d {
            if crate::scalar::rational_valuation(&v0.coords()[i], P) == Some(0) {
                let res = residue_mod_p(&v0.coords()[i], P);
                report.outcome = CosetOutcome::RejectedTheta1Const { component: i, residue: res };
                return report;
            }
        }
        // (2) θ_0(n) ≡ θ_0(0) mod p for all n: a non-residue cannot be a square
        if self.config.mode == RationalityMode::RationalSquare && P % 2 == 1 {
            let c0 = &v0.coords()[0];
            if crate::scalar::rational_valuation(c0, P) == Some(0) {
                let res = residue_mod_p(c0, P);
                if !is_quadratic_residue(res, P) {
                    report.outcome = CosetOutcome::RejectedQnr { value: res };
                    return report;
                }
            }
        }

        // exact values along the coset
        let points: Vec<(i64, CurvePoint<Nf<K>>)> =
            multiples.iter().map(|(n, nq)| (*n, c.add(base, nq))).collect();
        let values: Vec<(i64, Option<Nf<K>>)> =
            points.iter().map(|(n, pt)| (*n, self.exact_value(kind, pt))).collect();
        let mut known = vec![vec![]; d];
        for (n, v) in &values {
            if let Some(v) = v {
                for (i, kn) in known.iter_mut().enumerate().skip(1) {
                    if v.coords()[i].is_zero() {
                        kn.push(*n);
                    }
                }
            }
        }
        let structure = ExactStructure {
            constant_zero: (0..d).map(|i| v0.coords()[i].is_zero()).collect(),
            even: match base {
                CurvePoint::Infinity => true,
                pt => c.double(pt).is_infinity(),
            },
        };

        let theta = match self.theta(fg, kind, base, plan.degree) {
            Ok(t) => t,
            Err(e) => {
                report.outcome = uncertified_from(&e, fg.prec);
                return report;
            }
        };
        report.theta = summarize_theta(&theta);

        // recombination against exact arithmetic at n = 0, ±1, ±2
        let prec = theta.certified_precision();
        let mut ok = true;
        let mut checked = vec![];
        for (n, v) in &values {
            if n.abs() > 2 {
                continue;
            }
            let Some(v) = v else { continue };
            let agree = match Padic::<K, P>::lift(v, prec) {
                Ok(l) => theta.eval(*n).congruent_mod(&l, prec),
                Err(_) => false,
            };
            ok &= agree;
            checked.push(*n);
        }
        report.cross_check = Some(CrossCheck { ns: checked, precision: prec, agrees: ok });

        let verdict = rationality_roots(&theta.components, &known, &structure);
        report.roots = Some(verdict.clone());
        match verdict {
            RootsVerdict::Incomplete { diagnostics, required_precision } => {
                report.outcome = CosetOutcome::Uncertified { diagnostics, required_precision };
            }
            RootsVerdict::Complete { roots, .. } => {
                for n in &roots {
                    let pt = &points.iter().find(|(k, _)| k == n).expect("known roots are scanned").1;
                    report.survivors.push(self.survivor(*n, pt));
                }
                report.outcome = CosetOutcome::Roots { ns: roots };
            }
        }
        report
    }

    fn survivor(&self, n: i64, pt: &CurvePoint<Nf<K>>) -> SurvivingPoint {
        match pt {
            CurvePoint::Infinity => SurvivingPoint {
                n,
                point: "O".into(),
                x: None,
                beta_x: None,
                rational_value: None,
                square_root: None,
                accepted: false,
                note: "point at infinity".into(),
            },
            CurvePoint::Affine { x, .. } => {
                let bx = self.config.beta.clone() * x.clone();
                let rat = bx.as_rational();
                let root = rat.as_ref().and_then(rational_sqrt).map(|r| r.abs());
                let accepted = match self.config.mode {
                    RationalityMode::Rational => rat.is_some(),
                    RationalityMode::RationalSquare => root.is_some(),
                };
                SurvivingPoint {
                    n,
                    point: pt.to_string(),
                    x: Some(x.to_string()),
                    beta_x: Some(bx.to_string()),
                    rational_value: rat.as_ref().map(|r| r.to_string()),
                    square_root: root.map(|r| r.to_string()),
                    accepted,
                    note: if accepted { String::new() } else { "rationality condition fails".into() },
                }
            }
        }
    }

    /// Analyze every coset, escalating precision for uncertified ones.
    pub fn run(&self, plan: PrecisionPlan) -> Result<CaseReport, FormalError> {
        let c = self.curve();
        let cosets = self.enumerate_cosets();
        let multiples: Vec<(i64, CurvePoint<Nf<K>>)> =
            (-3..=3).map(|n| (n, c.scalar_mul(n, &self.q))).collect();
        let mut plan = plan;
        let mut plans = vec![];
        let mut reports: Vec<Option<CosetReport>> = vec![None; cosets.len()];
        let mut fg_exact: Option<FormalGroup<Nf<K>>> = None;
        for round in 0..=MAX_ESCALATIONS {
            let exact = match fg_exact.take() {
                Some(f) if f.order == plan.order => f,
                _ => FormalGroup::new(c, plan.order),
            };
            let fg = PadicFormalGroup::<K, P>::from_exact(exact, plan.digits)?;
            plans.push(plan);
            let todo: Vec<usize> = (0..cosets.len())
                .filter(|&i| reports[i].as_ref().map_or(true, |r| r.outcome.is_uncertified()))
                .collect();
            let done: Vec<(usize, CosetReport)> = todo
                .par_iter()
                .map(|&i| (i, self.analyze_coset(&fg, plan, &cosets[i], &multiples)))
                .collect();
            for (i, r) in done {
                reports[i] = Some(r);
            }
            fg_exact = Some(fg.exact);
            let pending = reports.iter().any(|r| r.as_ref().unwrap().outcome.is_uncertified());
            if !pending || !plan.escalate || round == MAX_ESCALATIONS {
                break;
            }
            plan = plan.escalated();
        }
        let cosets: Vec<CosetReport> = reports.into_iter().map(Option::unwrap).collect();
        let complete = !cosets.iter().any(|r| r.outcome.is_uncertified());
        let mut xs: Vec<SurvivingPoint> = cosets
            .iter()
            .flat_map(|r| r.survivors.iter().filter(|s| s.accepted).cloned())
            .collect();
        xs.sort_by(|a, b| a.point.cmp(&b.point));
        xs.dedup_by(|a, b| a.point == b.point);
        let conclusion = if complete { Some(self.conclude(&cosets)) } else { None };
        Ok(CaseReport {
            case: self.label,
            curve: self.config.label.clone(),
            prime: P,
            beta: self.config.beta.to_string(),
            mode: self.config.mode,
            kernel_multiple: self.m,
            z_q_valuation: self.zq.p_valuation(P).unwrap_or(i64::MAX),
            precision: plans,
            status: if complete { Status::Complete } else { Status::Incomplete },
            census: Census::of(&cosets),
            cosets,
            surviving_points: xs,
            conclusion,
        })
    }

    fn conclude(&self, cosets: &[CosetReport]) -> Conclusion {
        let mut values: BTreeSet<BigRational> = BTreeSet::new();
        for s in cosets.iter().flat_map(|r| &r.survivors).filter(|s| s.accepted) {
            let v = match self.config.mode {
                RationalityMode::RationalSquare => s.square_root.as_ref().unwrap(),
                RationalityMode::Rational => s.rational_value.as_ref().unwrap(),
            };
            values.insert(v.parse::<BigRational>().expect("rational"));
        }
        let mut steps = vec![];
        let mut solutions = BTreeSet::new();
        for v in &values {
            let cands = match self.label {
                CaseLabel::U12 => {
                    if genus9_check(v) {
                        back_substitute(self.label, v)
                    } else {
                        steps.push(format!("u = {v}: genus-9 system fails"));
                        continue;
                    }
                }
                CaseLabel::U9 => back_substitute(self.label, v),
            };
            match cands {
                Ok(ps) if ps.is_empty() => steps.push(format!("{v}: no admissible (P, Q)")),
                Ok(ps) => {
                    for p in ps {
                        steps.push(format!("{v}: (P, Q) = {p}"));
                        solutions.insert(p);
                    }
                }
                Err(reason) => steps.push(format!("{v}: {reason}")),
            }
        }
        Conclusion {
            values: values.iter().map(|v| v.to_string()).collect(),
            value_kind: match self.label {
                CaseLabel::U12 => "u",
                CaseLabel::U9 => "beta*x = P^2/R^2",
            },
            steps,
            solutions: solutions.into_iter().collect(),
        }
    }
}

fn residue_mod_p(r: &BigRational, p: u32) -> u32 {
    let pp = BigInt::from(p);
    let inv = crate::scalar::mod_inverse(r.denom(), &pp).expect("p-integral");
    let v = (r.numer() * inv).mod_floor(&pp);
    u32::try_from(&v).unwrap()
}

fn is_quadratic_residue(a: u32, p: u32) -> bool {
    (1..p).any(|s| (s * s) % p == a % p)
}

fn uncertified_from(e: &FormalError, prec: u32) -> CosetOutcome {
    let required = match e {
        FormalError::InsufficientPrecision { required, .. } => Some(*required),
        FormalError::Padic(_) => Some(prec + 1),
        _ => None,
    };
    CosetOutcome::Uncertified { diagnostics: vec![e.to_string()], required_precision: required }
}

fn summarize_theta<K: FieldTag, const P: u32>(t: &ThetaVector<K, P>) -> Vec<ComponentSummary> {
    t.components
        .iter()
        .enumerate()
        .map(|(i, s)| ComponentSummary {
            component: i,
            tail: s.tail,
            coefficients: s
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| CoeffSummary {
                    degree: k,
                    valuation: c.valuation(),
                    precision: c.precision(),
                    unit_part: unit_part(c, 3).map(|(_, u)| u.to_string()),
                })
                .collect(),
        })
        .collect()
}

/// Exact (P, Q) candidates from a certified value.
///
/// For U_12 the value is u with Q/P² = 1 - 2u², and P = □ forces P > 0. For U_9
/// it is βx = P²/R² with Q = P² - 3R².
pub fn back_substitute(label: CaseLabel, v: &BigRational) -> Result<Vec<LucasParams>, String> {
    let mut out = vec![];
    match label {
        CaseLabel::U12 => {
            let t = BigRational::from_integer(1.into()) - v * v * BigRational::from_integer(2.into());
            let Some(p) = crate::scalar::integer_sqrt(t.denom()) else {
                return Err(format!("Q/P^2 = {t}: denominator is not a square"));
            };
            let q = t.numer().clone();
            match LucasParams::from_bigints(&p, &q) {
                Ok(lp) => out.push(lp),
                Err(e) => return Err(format!("Q/P^2 = {t}: {e}")),
            }
            let ok: Vec<LucasParams> = out
                .into_iter()
                .filter(|lp| square_root_if_square(&lucas_u(*lp, 12)).is_nonzero_square())
                .collect();
            Ok(ok)
        }
        CaseLabel::U9 => {
            let Some(s) = rational_sqrt(v) else {
                return Err(format!("P^2/R^2 = {v} is not a rational square"));
            };
            if s.is_zero() {
                return Err("P = 0".into());
            }
            let (p, r) = (s.numer().abs(), s.denom().clone());
            let q = &p * &p - BigInt::from(3) * &r * &r;
            for sp in [-p.clone(), p.clone()] {
                if let Ok(lp) = LucasParams::from_bigints(&sp, &q) {
                    if square_root_if_square(&lucas_u(lp, 9)).is_nonzero_square() {
                        out.push(lp);
                    }
                }
            }
            Ok(out)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Coset<K: FieldTag> {
    pub r: i64,
    pub torsion: String,
    pub base: CurvePoint<Nf<K>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    Infinity,
    /// Nonzero point reducing to the identity; expanded through the formal group law.
    Kernel,
    Finite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CosetOutcome {
    RejectedTheta1Const { component: usize, residue: u32 },
    RejectedQnr { value: u32 },
    Roots { ns: Vec<i64> },
    Uncertified { diagnostics: Vec<String>, required_precision: Option<u32> },
}

impl CosetOutcome {
    pub fn is_uncertified(&self) -> bool {
        matches!(self, CosetOutcome::Uncertified { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeffSummary {
    pub degree: usize,
    pub valuation: Valuation,
    /// Absolute p-adic precision; absent for exact values.
    pub precision: Option<u32>,
    /// Unit part mod p³.
    pub unit_part: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub component: usize,
    pub tail: u32,
    pub coefficients: Vec<CoeffSummary>,
}

impl ComponentSummary {
    /// (valuation, unit part) of the coefficient of n^k, when known exactly.
    pub fn leading(&self, k: usize) -> Option<(u32, BigInt)> {
        let c = self.coefficients.get(k)?;
        Some((c.valuation.exact()?, c.unit_part.as_ref()?.parse().ok()?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub ns: Vec<i64>,
    pub precision: u32,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurvivingPoint {
    pub n: i64,
    pub point: String,
    pub x: Option<String>,
    pub beta_x: Option<String>,
    /// βx when it is rational.
    pub rational_value: Option<String>,
    pub square_root: Option<String>,
    pub accepted: bool,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub r: i64,
    pub torsion: String,
    pub base_point: String,
    pub base_kind: BaseKind,
    pub expanded: &'static str,
    pub theta_at_zero: Vec<String>,
    pub outcome: CosetOutcome,
    pub theta: Vec<ComponentSummary>,
    pub roots: Option<RootsVerdict>,
    pub cross_check: Option<CrossCheck>,
    pub survivors: Vec<SurvivingPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    Incomplete,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Census {
    pub cosets: usize,
    pub rejected_theta_const: usize,
    pub rejected_qnr: usize,
    pub with_roots: usize,
    pub uncertified: usize,
}

impl Census {
    fn of(rs: &[CosetReport]) -> Self {
        let mut c = Census { cosets: rs.len(), ..Default::default() };
        for r in rs {
            match r.outcome {
                CosetOutcome::RejectedTheta1Const { .. } => c.rejected_theta_const += 1,
                CosetOutcome::RejectedQnr { .. } => c.rejected_qnr += 1,
                CosetOutcome::Roots { .. } => c.with_roots += 1,
                CosetOutcome::Uncertified { .. } => c.uncertified += 1,
            }
        }
        c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Conclusion {
    pub values: Vec<String>,
    pub value_kind: &'static str,
    pub steps: Vec<String>,
    pub solutions: Vec<LucasParams>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: CaseLabel,
    pub curve: String,
    pub prime: u32,
    pub beta: String,
    pub mode: RationalityMode,
    pub kernel_multiple: u64,
    pub z_q_valuation: i64,
    /// Precision of each pass; later passes only revisit uncertified cosets.
    pub precision: Vec<PrecisionPlan>,
    pub status: Status,
    pub census: Census,
    pub cosets: Vec<CosetReport>,
    pub surviving_points: Vec<SurvivingPoint>,
    pub conclusion: Option<Conclusion>,
}

impl CaseReport {
    pub fn coset(&self, r: i64, torsion: &str) -> Option<&CosetReport> {
        self.cosets.iter().find(|c| c.r == r && c.torsion == torsion)
    }

    pub fn solutions(&self) -> Vec<LucasParams> {
        self.conclusion.as_ref().map(|c| c.solutions.clone()).unwrap_or_default()
    }
}

/// Run a bundled case; `plan = None` uses the defaults for its prime.
pub fn run_case(label: CaseLabel, plan: Option<PrecisionPlan>) -> Result<CaseReport, FormalError> {
    match label {
        CaseLabel::U12 => {
            let case = ChabautyCase::<QSqrt3, 7>::load(label)?;
            case.run(plan.unwrap_or_else(|| PrecisionPlan::default_for(7)))
        }
        CaseLabel::U9 => {
            let case = ChabautyCase::<QCubic, 2>::load(label)?;
            case.run(plan.unwrap_or_else(|| PrecisionPlan::default_for(2)))
        }
    }
}

pub fn prime_of(label: CaseLabel) -> u32 {
    match label {
        CaseLabel::U12 => 7,
        CaseLabel::U9 => 2,
    }
}

/// Debug dump of an n-series: one line per term with its coordinates and valuation.
pub fn dump_series<K: FieldTag, const P: u32>(s: &NSeries<K, P>) -> String {
    let mut out = String::new();
    for (k, c) in s.coeffs.iter().enumerate() {
        let coords: Vec<String> = c.coords().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("n^{k}\t[{}]\tv={}\n", coords.join(", "), c.valuation()));
    }
    out.push_str(&format!("tail\tv>={}\n", s.tail));
    out
}
