use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use sylow_core::cyclotomic::{cyclotomic_poly, phi_eval};
use sylow_core::numeric::mult_order;

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Φ_n(q) = ∏_{d|n} (q^d - 1)^μ(n/d)
fn mobius_oracle(n: u32, q: &BigUint) -> BigUint {
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for d in divisors(n) {
        let term = q.pow(d) - 1u32;
        match mobius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero());
    quot
}

#[test]
fn evaluation_matches_mobius_product() {
    for q in 2u64..=9 {
        let q = BigUint::from(q);
        for n in 1..=150 {
            assert_eq!(phi_eval(n, &q), mobius_oracle(n, &q), "Φ_{n}({q})");
        }
    }
}

proptest! {
    #[test]
    fn evaluation_at_large_q(n in 1u32..80, q in 2u64..u64::MAX) {
        let q = BigUint::from(q);
        prop_assert_eq!(phi_eval(n, &q), mobius_oracle(n, &q));
    }
}

#[test]
fn degree_is_totient() {
    for n in 1..=400 {
        assert_eq!(cyclotomic_poly(n).degree(), Some(totient(n) as usize), "Φ_{n}");
    }
}

#[test]
fn identities_for_minus_and_plus() {
    for q in 2u32..=9 {
        let qb = BigUint::from(q);
        for i in 1..=210 {
            let prod: BigUint = divisors(i).into_iter().map(|k| phi_eval(k, &qb)).product();
            assert_eq!(prod, qb.pow(i) - 1u32, "q^{i}-1 at q={q}");
        }
        for i in 1..=105 {
            let prod: BigUint = divisors(2 * i)
                .into_iter()
                .filter(|k| i % k != 0)
                .map(|k| phi_eval(k, &qb))
                .product();
            assert_eq!(prod, qb.pow(i) + 1u32, "q^{i}+1 at q={q}");
        }
    }
}

fn prime_factors_small(mut n: BigUint) -> Vec<u64> {
    // only applied to gcds of cyclotomic values, which are small
    let mut out = Vec::new();
    let mut p = 2u64;
    while !n.is_one() {
        if (&n % p).is_zero() {
            out.push(p);
            while (&n % p).is_zero() {
                n /= p;
            }
        }
        p += 1;
        assert!(p < 1_000_000, "unexpectedly large common divisor");
    }
    out
}

#[test]
fn common_prime_divisors_follow_the_lemma() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
        let qb = BigUint::from(q);
        let values: Vec<BigUint> = (1..=60).map(|i| phi_eval(i, &qb)).collect();
        for i in 1..=60u64 {
            for j in i + 1..=60 {
                let g = values[i as usize - 1].gcd(&values[j as usize - 1]);
                for r in prime_factors_small(g) {
                    let mut ratio = j;
                    let ok = j % i == 0 && {
                        ratio /= i;
                        let mut k = 0;
                        while ratio % r == 0 {
                            ratio /= r;
                            k += 1;
                        }
                        ratio == 1 && k >= 1
                    };
                    assert!(ok, "q={q}: {r} divides Φ_{i} and Φ_{j}");
                }
            }
        }
    }
}

#[test]
fn valuation_pattern_is_one() {
    for q in 2u64..=9 {
        let qb = BigUint::from(q);
        for r in (3u64..=97).filter(|&r| (2..r).all(|d| r % d != 0) && q % r != 0) {
            let m = mult_order(&qb, &BigUint::from(r)).unwrap();
            let m: u64 = m.try_into().unwrap();
            for k in 1..=2 {
                let i = m * r.pow(k);
                if i > 60 {
                    continue;
                }
                let mut v = phi_eval(i as u32, &qb);
                let mut count = 0;
                while (&v % r).is_zero() {
                    v /= r;
                    count += 1;
                }
                assert_eq!(count, 1, "v_{r}(Φ_{i}({q}))");
            }
        }
    }
}
