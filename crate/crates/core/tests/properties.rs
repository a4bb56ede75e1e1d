use std::collections::HashSet;

use cubelval_core::arith::{cube_free_part, is_prime, primes_up_to};
use cubelval_core::eisenstein::{
    cubic_symbol, ord3, split_prime, split_prime_data, EisensteinInt, Mu3, QOmega, SplitType, Val6,
};
use cubelval_core::hecke::{a_p, a_p_reference};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

fn eis(a: i64, b: i64) -> EisensteinInt {
    EisensteinInt::new(a, b)
}

fn small_eis() -> impl Strategy<Value = EisensteinInt> {
    (-60i64..60, -60i64..60).prop_map(|(a, b)| eis(a, b))
}

fn primary_prime() -> impl Strategy<Value = EisensteinInt> {
    let ps: Vec<u64> = primes_up_to(2000).into_iter().filter(|&p| p != 3).collect();
    (proptest::sample::select(ps), any::<bool>()).prop_map(|(p, conj)| match split_prime(p).unwrap() {
        SplitType::Split(pi) => {
            if conj {
                pi.conj()
            } else {
                pi
            }
        }
        _ => eis(-(p as i64), 0),
    })
}

fn coprime(a: &EisensteinInt, m: &EisensteinInt) -> bool {
    a.norm().gcd(&m.norm()).is_one()
}

fn mod_i64(v: &BigInt, q: i64) -> i64 {
    v.mod_floor(&BigInt::from(q)).try_into().unwrap()
}

// The residue field of every prime of norm < 500, with a brute-force cube test.
fn residue_fields() -> Vec<(EisensteinInt, Vec<EisensteinInt>, usize)> {
    let mut out = Vec::new();
    for p in primes_up_to(500) {
        match split_prime(p).unwrap() {
            SplitType::Split(pi) => {
                for pi in [pi.clone(), pi.conj()] {
                    out.push((pi, (0..p as i64).map(|u| eis(u, 0)).collect(), p as usize));
                }
            }
            SplitType::Inert if p * p < 500 => {
                let q = p as i64;
                let reps = (0..q).flat_map(|u| (0..q).map(move |v| eis(u, v))).collect();
                out.push((eis(-q, 0), reps, (p * p) as usize));
            }
            _ => {}
        }
    }
    out
}

#[test]
fn symbol_agrees_with_brute_force_cubes() {
    for (pi, reps, size) in residue_fields() {
        let n = pi.norm();
        // residues mod π as a canonical key: reduce x modulo π via its norm
        let key = |x: &EisensteinInt| -> (i64, i64) {
            if pi.b == BigInt::from(0) {
                let q: i64 = (&pi.a).try_into().unwrap();
                (mod_i64(&x.a, q.abs()), mod_i64(&x.b, q.abs()))
            } else {
                // Z[ω]/π ≅ Z/p with ω ↦ -a/b
                let p: i64 = (&n).try_into().unwrap();
                let a: i64 = (&pi.a).try_into().unwrap();
                let b: i64 = (&pi.b).try_into().unwrap();
                let binv = modinv(b.rem_euclid(p), p);
                let w = (-a).rem_euclid(p) * binv % p;
                ((mod_i64(&x.a, p) + mod_i64(&x.b, p) * w) % p, 0)
            }
        };
        let cubes: HashSet<(i64, i64)> = reps.iter().map(|x| key(&x.pow(3))).collect();
        assert!(cubes.len() >= size / 3);
        for x in &reps {
            if key(x) == (0, 0) {
                continue;
            }
            let s = cubic_symbol(x, &pi).unwrap();
            assert_eq!(s == Mu3::ONE, cubes.contains(&key(x)), "x={x} pi={pi}");
        }
    }
}

fn modinv(a: i64, m: i64) -> i64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as i64
}

#[test]
fn split_primes_have_primary_generators_of_prime_norm() {
    for p in primes_up_to(10_000).into_iter().filter(|p| p % 3 == 1) {
        let sp = split_prime_data(p).unwrap();
        let pi = sp.generator();
        assert_eq!(pi.norm(), BigInt::from(p));
        assert!(pi.is_primary());
    }
    assert!(split_prime_data(7 * 13).is_none());
    assert!(is_prime(9973));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn symbol_is_multiplicative_in_the_top(a in small_eis(), b in small_eis(), pi in primary_prime()) {
        prop_assume!(coprime(&a, &pi) && coprime(&b, &pi));
        let ab = &a * &b;
        prop_assert_eq!(cubic_symbol(&ab, &pi).unwrap(), cubic_symbol(&a, &pi).unwrap() * cubic_symbol(&b, &pi).unwrap());
    }

    #[test]
    fn symbol_is_multiplicative_in_the_bottom(a in small_eis(), m in primary_prime(), n in primary_prime()) {
        prop_assume!(coprime(&a, &m) && coprime(&a, &n));
        let mn = &m * &n;
        prop_assert_eq!(cubic_symbol(&a, &mn).unwrap(), cubic_symbol(&a, &m).unwrap() * cubic_symbol(&a, &n).unwrap());
    }

    #[test]
    fn cubic_reciprocity(m in primary_prime(), n in primary_prime()) {
        prop_assume!(coprime(&m, &n));
        let (m, n) = (m.primary_associate().unwrap(), n.primary_associate().unwrap());
        prop_assert_eq!(cubic_symbol(&m, &n).unwrap(), cubic_symbol(&n, &m).unwrap());
    }

    #[test]
    fn ord3_is_a_valuation(a in small_eis(), b in small_eis(), c in small_eis()) {
        let x = QOmega::from(&a);
        let y = QOmega::from(&b);
        let z = QOmega::from(&c);
        prop_assert_eq!(ord3(&(&x * &y)), ord3(&x) + ord3(&y));
        let s = &x + &y;
        prop_assert!(ord3(&s) >= ord3(&x).min(ord3(&y)));
        if !z.is_zero() {
            let q = &x * &z.inv().unwrap();
            prop_assert_eq!(ord3(&q) + ord3(&z), ord3(&x));
        }
        prop_assert_eq!(ord3(&QOmega::from(&eis(1, -1))), Val6::ratio(1, 2));
    }

    #[test]
    fn fast_a_p_matches_reference(lambda in 2u64..5000, idx in 0usize..1200) {
        let ps = primes_up_to(10_000);
        let p = ps[idx % ps.len()];
        prop_assert_eq!(a_p(lambda, p), a_p_reference(lambda, p));
        prop_assert_eq!(a_p(lambda, p), a_p(cube_free_part(lambda), p));
    }
}
