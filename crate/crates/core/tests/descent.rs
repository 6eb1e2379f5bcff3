use std::collections::BTreeSet;

use lucas_squares::descent::{
    enumerate_u12_systems, factor_u12, pairwise_gcd_bound, row_multipliers, surviving_u12_table,
    u12_system_verdicts, Form, SolvabilityVerdict,
};
use lucas_squares::lucas::{lucas_u, square_root_if_square, LucasParams};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

fn form_mod(f: Form, p: i64, q: i64, m: i64) -> i64 {
    let (p2, q2) = (p * p % m, q * q % m);
    let v = match f {
        Form::P => p,
        Form::P2Minus3Q => p2 - 3 * q,
        Form::P2Minus2Q => p2 - 2 * q,
        Form::P2MinusQ => p2 - q,
        Form::Quartic => p2 * p2 - 4 * p2 * q + q2,
        other => panic!("unexpected form {other:?}"),
    };
    v.rem_euclid(m)
}

fn smallest_prime(m: i64) -> i64 {
    (2..=m).find(|d| m % d == 0).unwrap()
}

/// Independent re-scan: no residue pair (P, Q) mod m with l ∤ gcd satisfies every condition.
fn congruence_blocks(sys: &lucas_squares::descent::ConstraintSystem, m: i64) -> bool {
    let l = smallest_prime(m);
    let squares: BTreeSet<i64> = (0..m).map(|s| s * s % m).collect();
    for p in 0..m {
        for q in 0..m {
            if p % l == 0 && q % l == 0 {
                continue;
            }
            let ok = sys.conditions.iter().all(|c| {
                let v = form_mod(c.form, p, q, m);
                squares.iter().any(|s| (c.multiplier * s).rem_euclid(m) == v)
            });
            if ok {
                return false;
            }
        }
    }
    true
}

#[test]
fn congruence_verdicts_rescanned() {
    let verdicts = u12_system_verdicts();
    assert_eq!(verdicts.len(), enumerate_u12_systems().len());
    let mut blocked = 0;
    for v in &verdicts {
        match &v.verdict {
            SolvabilityVerdict::CongruenceUnsolvable { modulus } => {
                assert!(congruence_blocks(&v.system, *modulus as i64), "{}", v.system);
                blocked += 1;
            }
            SolvabilityVerdict::Survives { witness } => {
                for &m in &[16, 9, 5, 7, 11, 13] {
                    assert!(!congruence_blocks(&v.system, m), "{} should survive mod {m}", v.system);
                }
                if let Some((p, q)) = witness {
                    assert!(v.system.holds(*p, *q));
                }
            }
            SolvabilityVerdict::RealUnsolvable { .. } => {
                // sample real sign patterns on a grid
                for p in -30i64..=30 {
                    for q in -30i64..=30 {
                        if p == 0 && q.abs() != 1 {
                            continue;
                        }
                        let signs_ok = v.system.conditions.iter().all(|c| {
                            let val = c.form.eval_i64(p, q);
                            val.is_positive() == (c.multiplier > 0) && !num_traits::Zero::is_zero(&val)
                        });
                        assert!(!signs_ok, "{} has real point ({p}, {q})", v.system);
                    }
                }
            }
        }
    }
    assert!(blocked > 0);
}

#[test]
fn table_row_four_and_quartic_identity() {
    let table = surviving_u12_table();
    assert_eq!(table.len(), 4);
    assert_eq!(row_multipliers(&table[3]), [1, 1, 2, 3, 6]);
    for p in -40i64..=40 {
        for q in -40i64..=40 {
            let quartic = Form::Quartic.eval_i64(p, q);
            let b = Form::P2Minus2Q.eval_i64(p, q);
            assert_eq!(quartic, &b * &b - BigInt::from(3 * q * q));
        }
    }
}

#[test]
fn square_terms_fall_into_a_table_row() {
    // Every coprime pair in the box with U_12 a nonzero square satisfies some row.
    let table = surviving_u12_table();
    let mut found = 0;
    for p in -100i64..=100 {
        for q in -100i64..=100 {
            if p == 0 || q == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let params = LucasParams::new(p, q).unwrap();
            if square_root_if_square(&lucas_u(params, 12)).is_nonzero_square() {
                found += 1;
                assert!(table.iter().any(|row| row.holds(p, q)), "({p}, {q})");
            }
        }
    }
    assert_eq!(found, 1);
}

#[test]
fn factor_gcds_stay_small() {
    for p in -60i64..=60 {
        for q in -60i64..=60 {
            if p == 0 || q == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let params = LucasParams::new(p, q).unwrap();
            let g = pairwise_gcd_bound(params);
            let f = factor_u12(params);
            let [a, b, c, d, e] = f.clone();
            let direct = (&a * &b * &d).gcd(&(&c * &e));
            assert_eq!(direct, g.halves);
            assert!(g.divides_two(), "({p}, {q}): {} {}", g.halves, g.cofactor);
            assert_eq!(f.iter().product::<BigInt>(), lucas_u(params, 12));
        }
    }
}
