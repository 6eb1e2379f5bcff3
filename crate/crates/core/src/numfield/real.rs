//! Real embeddings with rigorous enclosures, and the unit sign filters built on them.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{FieldTag, Nf};
use crate::error::NumberFieldError;
use crate::poly::Interval;

const START_BITS: u32 = 24;
const MAX_BITS: u32 = 4096;

/// Isolating intervals of the real roots of the minimal polynomial, increasing.
pub fn real_roots<K: FieldTag>() -> Vec<Interval> {
    K::spec().real_root_intervals().to_vec()
}

/// Enclosures of `a` at every real embedding, each root refined to width 2^-bits.
pub fn real_embeddings<K: FieldTag>(a: &Nf<K>, bits: u32) -> Vec<Interval> {
    let spec = K::spec();
    let f = spec.min_poly_rat();
    spec.real_root_intervals()
        .iter()
        .map(|iv| f.refine_root(iv, bits).eval_poly(a.coords()))
        .collect()
}

/// Strict sign of `a` at every real embedding, refining until each is decided.
pub fn embedding_signs<K: FieldTag>(a: &Nf<K>) -> Result<Vec<Ordering>, NumberFieldError> {
    if a.is_zero() {
        return Err(NumberFieldError::ZeroSign);
    }
    let mut bits = START_BITS;
    loop {
        let ivs = real_embeddings(a, bits);
        let signs: Option<Vec<Ordering>> = ivs.iter().map(|iv| iv.sign()).collect();
        if let Some(s) = signs {
            return Ok(s);
        }
        // a nonzero element has nonzero norm, so no embedding vanishes
        bits *= 2;
        assert!(bits <= MAX_BITS, "sign refinement did not terminate");
    }
}

/// Representatives ±ε1^a ε2^b (a, b ∈ {0, 1}) of the norm +1 unit square classes,
/// built from the configured fundamental units.
pub fn lambda_candidates<K: FieldTag>() -> Vec<Nf<K>> {
    let units: Vec<Nf<K>> =
        K::spec().units.iter().map(|(_, c)| Nf::new(c.clone())).collect();
    let mut out = vec![];
    for sign in [1i64, -1] {
        for mask in 0u32..(1 << units.len()) {
            let mut x = Nf::<K>::from_ints(&[sign]);
            for (i, u) in units.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    x = x * u.clone();
                }
            }
            if x.norm().is_one() {
                out.push(x);
            }
        }
    }
    out
}

/// Keep the λ for which s·P² + c·R² = λU² is solvable at every real place.
///
/// At a place where s and c have the same sign, the left side has that sign for
/// all (P, R) ≠ 0, so λ must too; where the signs differ there is no constraint.
pub fn positivity_filter<K: FieldTag>(
    candidates: &[Nf<K>],
    s: &Nf<K>,
    c: &Nf<K>,
) -> Result<Vec<Nf<K>>, NumberFieldError> {
    let places = K::spec().real_root_intervals().len();
    let all: Vec<usize> = (0..places).collect();
    positivity_filter_at(candidates, s, c, &all)
}

/// As [`positivity_filter`] but only at the listed real places (indices into
/// the increasing list of real roots).
pub fn positivity_filter_at<K: FieldTag>(
    candidates: &[Nf<K>],
    s: &Nf<K>,
    c: &Nf<K>,
    places: &[usize],
) -> Result<Vec<Nf<K>>, NumberFieldError> {
    let ss = embedding_signs(s)?;
    let cs = embedding_signs(c)?;
    let mut out = vec![];
    for lam in candidates {
        let ls = embedding_signs(lam)?;
        let ok = places.iter().all(|&j| ss[j] != cs[j] || ls[j] == ss[j]);
        if ok {
            out.push(lam.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{QCubic, Rationals};

    #[test]
    fn embedding_of_five_minus_alpha_minus_alpha_squared() {
        // at the largest root 1.8793852..., 5 - α - α² is about -0.4114
        let a = Nf::<QCubic>::from_ints(&[5, -1, -1]);
        let top = real_embeddings(&a, 64).pop().unwrap();
        let (lo, hi) = (crate::scalar::approx_f64(&top.lo), crate::scalar::approx_f64(&top.hi));
        assert!(lo > -0.4115 && hi < -0.4113, "{lo} {hi}");
        assert_eq!(embedding_signs(&(-a)).unwrap()[2], Ordering::Greater);
    }

    type L = Nf<QCubic>;

    #[test]
    fn embedding_of_shifted_element() {
        let t = L::from_ints(&[-5, 1, 1]);
        let ivs = real_embeddings(&t, 40);
        // roots in increasing order: -1.532, -0.347, 1.879
        assert!((ivs[2].midpoint_f64() - 0.411_474_127).abs() < 1e-6);
        assert_eq!(embedding_signs(&t).unwrap(), vec![Ordering::Less, Ordering::Less, Ordering::Greater]);
        let seven = Nf::<Rationals>::from_ints(&[7]);
        assert_eq!(embedding_signs(&seven).unwrap(), vec![Ordering::Greater]);
        assert!(embedding_signs(&L::zero()).is_err());
    }

    #[test]
    fn unit_classes() {
        let c = lambda_candidates::<QCubic>();
        assert_eq!(c.len(), 4);
        assert!(c.contains(&L::one()));
        let t = L::from_ints(&[-5, 1, 1]);
        let plus = positivity_filter(&c, &L::one(), &t).unwrap();
        assert_eq!(plus, vec![L::one(), L::gen()]);
        let minus = positivity_filter(&c, &-L::one(), &t).unwrap();
        assert_eq!(minus, vec![L::gen()]);
    }
}
