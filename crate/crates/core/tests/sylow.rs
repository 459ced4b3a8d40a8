use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use sylow_core::cyclotomic::phi_eval;
use sylow_core::grid::{Grid, QSelection};
use sylow_core::groups::{order, structural_factorization};
use sylow_core::numeric::{mult_order, FactorConfig};
use sylow_core::sylow::{characteristic_sylow, sylow_order, sylow_spectrum};
use sylow_core::{Family, GroupId};

fn scan_groups() -> Vec<GroupId> {
    let mut groups = Grid::classical(12, 32).groups();
    groups.extend(Grid::new(Family::EXCEPTIONAL.to_vec(), 1..=1, QSelection::Range { min: 2, max: 32 }).groups());
    groups
}

fn strip(n: &BigUint, r: u64) -> (BigUint, u64) {
    let mut rest = n.clone();
    let mut v = 0;
    while (&rest % r).is_zero() {
        rest /= r;
        v += 1;
    }
    (rest, v)
}

#[test]
fn spectrum_reassembles_order() {
    let cfg = FactorConfig::default();
    for g in scan_groups() {
        let s = sylow_spectrum(&g, &cfg).unwrap();
        assert_eq!(s.product(), order(&g).unwrap(), "{g}");
        for w in s.entries.windows(2) {
            assert!(w[0].order > w[1].order || (w[0].order == w[1].order && w[0].prime < w[1].prime));
        }
    }
}

#[test]
fn small_orders_match_trial_division() {
    let cfg = FactorConfig::default();
    for g in scan_groups() {
        let t = order(&g).unwrap();
        if t.bits() > 40 {
            continue;
        }
        let mut rest = t.to_u64().unwrap();
        let mut naive = Vec::new();
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                let mut pe = 1;
                while rest % p == 0 {
                    rest /= p;
                    pe *= p;
                }
                naive.push((p, pe));
            }
            p += 1;
        }
        let s = sylow_spectrum(&g, &cfg).unwrap();
        let mut got: Vec<(u64, u64)> =
            s.entries.iter().map(|e| (e.prime.to_u64().unwrap(), e.order.to_u64().unwrap())).collect();
        got.sort();
        assert_eq!(got, naive, "{g}");
    }
}

#[test]
fn valuation_splits_over_cyclotomic_factors() {
    let cfg = FactorConfig::default();
    for g in scan_groups() {
        let q = g.q_value().unwrap();
        let qb = BigUint::from(q);
        let p = g.characteristic().unwrap();
        let f = structural_factorization(&g).unwrap();
        let t = order(&g).unwrap();
        for e in sylow_spectrum(&g, &cfg).unwrap().entries {
            let r = e.prime.to_u64().unwrap();
            if r == p || (g.is_tits() && r == 2) {
                continue;
            }
            let m = mult_order(&qb, &e.prime).unwrap().to_u64().unwrap();
            let mut total = 0;
            for (&i, &ei) in &f.exponents {
                let i = i as u64;
                if i % m == 0 && strip(&BigUint::from(i / m), r).0 == BigUint::from(1u32) {
                    total += ei as u64 * strip(&phi_eval(i as u32, &qb), r).1;
                }
            }
            let expected = total - strip(&BigUint::from(f.d), r).1;
            assert_eq!(strip(&t, r).1, expected, "{g} r={r}");
            assert_eq!(e.exponent, expected);
        }
    }
}

#[test]
fn divisible_indices_have_the_form_m_r_k() {
    let grid = Grid::new(Family::CLASSICAL.to_vec(), 1..=10, QSelection::Range { min: 2, max: 16 });
    for g in grid.groups() {
        let q = g.q_value().unwrap();
        let qb = BigUint::from(q);
        let f = structural_factorization(&g).unwrap();
        for r in (2u64..=97).filter(|&r| (2..r).all(|d| r % d != 0) && q % r != 0) {
            let m = mult_order(&qb, &BigUint::from(r)).unwrap().to_u64().unwrap();
            for &i in f.exponents.keys() {
                if (phi_eval(i, &qb) % r).is_zero() {
                    let i = i as u64;
                    assert_eq!(i % m, 0, "{g} r={r} i={i}");
                    let (rest, _) = strip(&BigUint::from(i / m), r);
                    assert_eq!(rest, BigUint::from(1u32), "{g} r={r} i={i}");
                }
            }
        }
    }
}

#[test]
fn characteristic_sylow_is_large() {
    for g in scan_groups() {
        let s = characteristic_sylow(&g).unwrap();
        let t = order(&g).unwrap();
        assert!(s.pow(3) > t, "{g}");
        assert!(s.pow(2) <= t, "{g}");
        let p = BigUint::from(g.characteristic().unwrap());
        assert_eq!(sylow_order(&g, &p).unwrap(), s);
    }
}
