//! Lucas sequences U_n(P, Q): evaluation, square detection, degeneracy and a
//! brute-force search for square terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::LucasError;
use crate::scalar::integer_sqrt;

/// A coprime pair of nonzero integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LucasParams {
    pub p_coef: i64,
    pub q_coef: i64,
}

impl LucasParams {
    pub fn new(p: i64, q: i64) -> Result<Self, LucasError> {
        if p == 0 || q == 0 {
            return Err(LucasError::ZeroParameter);
        }
        let g = p.gcd(&q);
        if g != 1 {
            return Err(LucasError::NotCoprime(g.to_string()));
        }
        Ok(LucasParams { p_coef: p, q_coef: q })
    }

    pub fn from_bigints(p: &BigInt, q: &BigInt) -> Result<Self, LucasError> {
        if p.is_zero() || q.is_zero() {
            return Err(LucasError::ZeroParameter);
        }
        let g = p.gcd(q);
        if !g.is_one() {
            return Err(LucasError::NotCoprime(g.to_string()));
        }
        let p = i64::try_from(p).map_err(|_| LucasError::NonIntegral)?;
        let q = i64::try_from(q).map_err(|_| LucasError::NonIntegral)?;
        Ok(LucasParams { p_coef: p, q_coef: q })
    }
}

impl std::fmt::Display for LucasParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p_coef, self.q_coef)
    }
}

/// U_n by the linear recurrence.
pub fn lucas_u(params: LucasParams, n: u64) -> BigInt {
    let p = BigInt::from(params.p_coef);
    let q = BigInt::from(params.q_coef);
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let c = &p * &b - &q * &a;
        a = std::mem::replace(&mut b, c);
    }
    b
}

type Mat = [[BigInt; 2]; 2];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// U_n from the n-th power of [[P, -Q], [1, 0]] by repeated squaring; the
/// lower-left entry of the power is U_n.
pub fn lucas_u_doubling(params: LucasParams, n: u64) -> BigInt {
    let mut base: Mat = [
        [BigInt::from(params.p_coef), BigInt::from(-params.q_coef)],
        [BigInt::one(), BigInt::zero()],
    ];
    let mut acc: Mat = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc[1][0].clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    #[serde(serialize_with = "crate::report::as_string")]
    pub value: BigInt,
    #[serde(serialize_with = "crate::report::opt_string")]
    pub root: Option<BigInt>,
}

impl SquareWitness {
    /// A square of a nonzero integer.
    pub fn is_nonzero_square(&self) -> bool {
        self.root.is_some() && !self.value.is_zero()
    }

    /// The excluded value zero.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

pub fn square_root_if_square(v: &BigInt) -> SquareWitness {
    SquareWitness { value: v.clone(), root: integer_sqrt(v) }
}

/// P² ∈ {0, Q, 2Q, 3Q, 4Q}.
pub fn is_degenerate(params: LucasParams) -> bool {
    let p2 = params.p_coef as i128 * params.p_coef as i128;
    let q = params.q_coef as i128;
    (0..=4).any(|k| p2 == k * q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareHit {
    pub params: LucasParams,
    #[serde(serialize_with = "crate::report::as_string")]
    pub root: BigInt,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: u64,
    pub bound: i64,
    /// Pairs with U_n a nonzero square, in lexicographic order.
    pub hits: Vec<SquareHit>,
    /// Pairs with U_n = 0.
    pub zeros: Vec<LucasParams>,
}

/// Every coprime nonzero (P, Q) with |P|, |Q| <= bound and U_n(P, Q) a square.
pub fn search_square_terms(n: u64, bound: i64) -> SearchResult {
    let rows: Vec<(Vec<SquareHit>, Vec<LucasParams>)> = (-bound..=bound)
        .into_par_iter()
        .map(|p| {
            let mut hits = vec![];
            let mut zeros = vec![];
            for q in -bound..=bound {
                let Ok(params) = LucasParams::new(p, q) else { continue };
                let w = square_root_if_square(&lucas_u(params, n));
                if w.is_zero() {
                    zeros.push(params);
                } else if let Some(root) = w.root {
                    hits.push(SquareHit { params, root, degenerate: is_degenerate(params) });
                }
            }
            (hits, zeros)
        })
        .collect();
    let mut out = SearchResult { n, bound, ..Default::default() };
    for (h, z) in rows {
        out.hits.extend(h);
        out.zeros.extend(z);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    U3,
    U6,
}

impl std::str::FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "u3" => Ok(FamilyKind::U3),
            "u6" => Ok(FamilyKind::U6),
            _ => Err(format!("unknown family {s}")),
        }
    }
}

/// U_3 = □ for (a, a² - b²); U_6 = □ for (3a²b², (-a⁸ + 12a⁴b⁴ - 9b⁸)/2) with a, b odd.
pub fn theorem2_family(kind: FamilyKind, a: i64, b: i64) -> Result<LucasParams, LucasError> {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    match kind {
        FamilyKind::U3 => LucasParams::from_bigints(&a, &(&a * &a - &b * &b)),
        FamilyKind::U6 => {
            let a4 = a.pow(4);
            let b4 = b.pow(4);
            let p = BigInt::from(3) * &a * &a * &b * &b;
            let num = -&a4 * &a4 + BigInt::from(12) * &a4 * &b4 - BigInt::from(9) * &b4 * &b4;
            if num.is_odd() {
                return Err(LucasError::NonIntegral);
            }
            LucasParams::from_bigints(&p, &(num / 2))
        }
    }
}

/// Square root of U_3 resp. U_6 for a family member, if it is a nonzero square.
pub fn family_root(kind: FamilyKind, params: LucasParams) -> Option<BigInt> {
    let n = match kind {
        FamilyKind::U3 => 3,
        FamilyKind::U6 => 6,
    };
    let w = square_root_if_square(&lucas_u(params, n));
    if w.is_nonzero_square() {
        w.root.map(|r| r.abs())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: i64, q: i64) -> LucasParams {
        LucasParams::new(p, q).unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(lucas_u(lp(1, -1), 12), BigInt::from(144));
        assert_eq!(lucas_u(lp(2, 1), 9), BigInt::from(9));
        assert_eq!(lucas_u(lp(3, 1), 6), BigInt::from(144));
        assert_eq!(lucas_u(lp(5, 3), 0), BigInt::zero());
        assert_eq!(lucas_u(lp(5, 3), 1), BigInt::one());
        for n in 0..30 {
            assert_eq!(lucas_u(lp(-3, 7), n), lucas_u_doubling(lp(-3, 7), n));
        }
    }

    #[test]
    fn params_validation() {
        assert_eq!(LucasParams::new(0, 1), Err(LucasError::ZeroParameter));
        assert!(matches!(LucasParams::new(2, 4), Err(LucasError::NotCoprime(_))));
    }

    #[test]
    fn squares_and_degeneracy() {
        assert_eq!(square_root_if_square(&BigInt::from(144)).root, Some(BigInt::from(12)));
        assert_eq!(square_root_if_square(&BigInt::from(143)).root, None);
        let z = square_root_if_square(&BigInt::zero());
        assert!(z.is_zero() && !z.is_nonzero_square());
        assert!(is_degenerate(lp(1, 1)));
        assert!(is_degenerate(lp(2, 1)));
        assert!(!is_degenerate(lp(1, -1)));
    }

    #[test]
    fn families() {
        assert_eq!(theorem2_family(FamilyKind::U6, 1, 1).unwrap(), lp(3, 1));
        assert_eq!(theorem2_family(FamilyKind::U3, 2, 1).unwrap(), lp(2, 3));
        assert_eq!(theorem2_family(FamilyKind::U6, 2, 1), Err(LucasError::NonIntegral));
        assert_eq!(family_root(FamilyKind::U6, lp(3, 1)), Some(BigInt::from(12)));
    }
}
