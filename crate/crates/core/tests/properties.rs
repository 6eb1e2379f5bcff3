use lucas_squares::descent::factor_u12;
use lucas_squares::ellcurve::{CurveConfig, CurvePoint};
use lucas_squares::lucas::{lucas_u, lucas_u_doubling, search_square_terms, LucasParams};
use lucas_squares::numfield::{Nf, Padic, QCubic, QSqrt3};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = LucasParams> {
    (-60i64..=60, -60i64..=60)
        .prop_filter("coprime nonzero", |(p, q)| *p != 0 && *q != 0 && p.gcd(q) == 1)
        .prop_map(|(p, q)| LucasParams::new(p, q).unwrap())
}

fn cubic() -> impl Strategy<Value = Nf<QCubic>> {
    prop::collection::vec(-40i64..=40, 3).prop_map(|c| Nf::from_ints(&c))
}

fn quad() -> impl Strategy<Value = Nf<QSqrt3>> {
    prop::collection::vec(-40i64..=40, 2).prop_map(|c| Nf::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn recurrence_matches_doubling(params in coprime_pair(), n in 0u64..=200) {
        prop_assert_eq!(lucas_u(params, n), lucas_u_doubling(params, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn low_index_closed_forms(params in coprime_pair()) {
        let p = BigInt::from(params.p_coef);
        let q = BigInt::from(params.q_coef);
        prop_assert_eq!(lucas_u(params, 2), p.clone());
        prop_assert_eq!(lucas_u(params, 3), &p * &p - &q);
    }

    #[test]
    fn u12_factorization(params in coprime_pair()) {
        let prod: BigInt = factor_u12(params).iter().product();
        prop_assert_eq!(prod, lucas_u(params, 12));
    }

    #[test]
    fn u9_factorization(params in coprime_pair()) {
        let p = BigInt::from(params.p_coef);
        let q = BigInt::from(params.q_coef);
        let (p2, q2) = (&p * &p, &q * &q);
        let cofactor = &p2 * &p2 * &p2 - 6 * &p2 * &p2 * &q + 9 * &p2 * &q2 - &q2 * &q;
        prop_assert_eq!(lucas_u(params, 3) * cofactor, lucas_u(params, 9));
    }

    #[test]
    fn norm_is_multiplicative(a in cubic(), b in cubic()) {
        prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
        prop_assert_eq!(a.norm(), a.norm_by_matrix());
    }

    #[test]
    fn quadratic_norm_is_multiplicative(a in quad(), b in quad()) {
        prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
    }

    #[test]
    fn sigma_is_an_automorphism_of_order_three(a in cubic(), b in cubic()) {
        let s = |x: &Nf<QCubic>| x.apply_sigma().unwrap();
        prop_assert_eq!(s(&(a.clone() * b.clone())), s(&a) * s(&b));
        prop_assert_eq!(s(&(a.clone() + b.clone())), s(&a) + s(&b));
        prop_assert_eq!(s(&s(&s(&a))), a.clone());
        prop_assert_eq!(s(&a).norm(), a.norm());
    }

    #[test]
    fn lift_is_a_ring_homomorphism(a in cubic(), b in cubic(), n in 1u32..20) {
        type Z2 = Padic<QCubic, 2>;
        let l = |x: &Nf<QCubic>| Z2::lift(x, n).unwrap();
        prop_assert!(l(&(a.clone() * b.clone())).agrees_with(&(l(&a) * l(&b))));
        prop_assert!(l(&(a.clone() + b.clone())).agrees_with(&(l(&a) + l(&b))));
        type Z7 = Padic<QSqrt3, 7>;
        let a7 = Nf::<QSqrt3>::new(a.coords()[..2].to_vec());
        let b7 = Nf::<QSqrt3>::new(b.coords()[..2].to_vec());
        let m = |x: &Nf<QSqrt3>| Z7::lift(x, n).unwrap();
        prop_assert!(m(&(a7.clone() * b7.clone())).agrees_with(&(m(&a7) * m(&b7))));
    }
}

#[test]
fn search_is_box_monotone() {
    let big = search_square_terms(12, 100);
    for b in [10, 50, 100] {
        let small = search_square_terms(12, b);
        let restricted: Vec<_> = big
            .hits
            .iter()
            .filter(|h| h.params.p_coef.abs() <= b && h.params.q_coef.abs() <= b)
            .cloned()
            .collect();
        assert_eq!(small.hits, restricted, "bound {b}");
    }
    let nine = search_square_terms(9, 100);
    for b in [10, 50] {
        let small = search_square_terms(9, b);
        assert_eq!(small.hits, nine.hits, "bound {b}");
    }
}

fn points<K: lucas_squares::numfield::FieldTag>(cfg: &CurveConfig<K>) -> Vec<CurvePoint<Nf<K>>> {
    let c = &cfg.curve;
    let mut out = vec![];
    for t in &cfg.torsion {
        for k in -2..=2 {
            out.push(c.add(&c.scalar_mul(k, &cfg.generator), t));
        }
    }
    out
}

#[test]
fn group_law_is_associative_and_scalar_mul_additive() {
    let e1 = CurveConfig::<QSqrt3>::load("E1").unwrap();
    let pts = points(&e1);
    let c = &e1.curve;
    for a in &pts {
        assert!(c.contains(a));
        for b in pts.iter().step_by(3) {
            assert_eq!(c.add(a, b), c.add(b, a));
            for d in pts.iter().step_by(4) {
                assert_eq!(c.add(&c.add(a, b), d), c.add(a, &c.add(b, d)));
            }
        }
        assert_eq!(c.add(a, &c.neg(a)), CurvePoint::Infinity);
    }
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            let g = &e1.generator;
            assert_eq!(c.scalar_mul(m + n, g), c.add(&c.scalar_mul(m, g), &c.scalar_mul(n, g)));
        }
    }
    let e2 = CurveConfig::<QCubic>::load("E2").unwrap();
    let c2 = &e2.curve;
    let g = &e2.generator;
    for m in -3i64..=3 {
        for n in -3i64..=3 {
            assert_eq!(c2.scalar_mul(m + n, g), c2.add(&c2.scalar_mul(m, g), &c2.scalar_mul(n, g)));
        }
    }
    for t in &e2.torsion {
        assert_eq!(c2.double(t), CurvePoint::Infinity);
    }
}
