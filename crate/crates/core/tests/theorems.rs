use num_bigint::BigUint;
use num_traits::ToPrimitive;

use sylow_core::grid::{Grid, QSelection};
use sylow_core::groups::theorem_row;
use sylow_core::numeric::{is_prime_u64, FactorConfig};
use sylow_core::theorems::{
    admissible_primes, check_buekenhout, check_factor_count, check_table3, check_theorem1, classify_largest_sylow,
    ArtinCategory,
};
use sylow_core::{Family, GroupId};

fn exceptional(max: u64) -> Vec<GroupId> {
    Grid::new(Family::EXCEPTIONAL.to_vec(), 1..=1, QSelection::Range { min: 2, max }).groups()
}

#[test]
fn chain_implies_the_bound() {
    let cfg = FactorConfig::default();
    let mut both = 0;
    for g in exceptional(32) {
        let t3 = check_table3(&g).unwrap();
        let Some(true) = t3.bound_holds else { continue };
        for r in admissible_primes(&g, &cfg).unwrap() {
            let fc = check_factor_count(&g, &r).unwrap();
            if fc.chain_ok {
                both += 1;
                assert!(check_theorem1(&g, &r).unwrap().holds, "{g} r={r}");
            }
        }
    }
    assert!(both > 100);
}

fn is_mersenne_prime(q: u64) -> bool {
    is_prime_u64(q) && (q + 1).is_power_of_two()
}

/// The case list of the classification, from the parameters.
fn expected_category(g: &GroupId) -> ArtinCategory {
    let q = g.q_value().unwrap();
    match (g.family(), g.rank()) {
        (Family::A, Some(1)) if is_mersenne_prime(q) => ArtinCategory::MersennePsl2,
        (Family::A, Some(1)) if q.is_power_of_two() && is_prime_u64(q + 1) => ArtinCategory::FermatPsl2,
        (Family::A, Some(1)) if q == 8 => ArtinCategory::Psl28,
        (Family::TwistedA, Some(2)) if q == 3 => ArtinCategory::Psu33,
        (Family::TwistedA, Some(3)) if q == 2 => ArtinCategory::Psu42,
        _ => ArtinCategory::Generic,
    }
}

#[test]
fn classification_over_psl2_and_small_unitary() {
    let cfg = FactorConfig::default();
    let mut groups = Grid::new(vec![Family::A], 1..=1, QSelection::Range { min: 2, max: 8192 }).groups();
    groups.extend(Grid::new(vec![Family::TwistedA], 2..=3, QSelection::Range { min: 2, max: 16 }).groups());
    groups.extend(Grid::classical(6, 9).groups());
    groups.extend(exceptional(16));
    let mut special = Vec::new();
    for g in &groups {
        let c = classify_largest_sylow(g, &cfg).unwrap();
        assert_eq!(c.category, expected_category(g), "{g}");
        assert_eq!(c.is_characteristic, c.category == ArtinCategory::Generic, "{g}");
        if c.category != ArtinCategory::Generic {
            special.push(g.to_string());
        }
    }
    special.sort();
    special.dedup();
    let mut want: Vec<String> = ["A_1(4)", "A_1(7)", "A_1(8)", "A_1(16)", "A_1(31)", "A_1(127)", "A_1(256)", "A_1(8191)", "2A_2(3)", "2A_3(2)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    want.sort();
    assert_eq!(special, want);
}

#[test]
fn good_contributors_are_small() {
    let cfg = FactorConfig::default();
    let mut groups = Grid::classical(12, 32).groups();
    groups.extend(exceptional(32));
    let mut with_good = 0;
    for g in groups.iter().filter(|g| sylow_core::theorems::buekenhout_applies(g)) {
        let res = check_buekenhout(g, &cfg).unwrap();
        assert!(res.holds, "{g}: {res:?}");
        if !res.good_non_characteristic.is_empty() {
            with_good += 1;
        }
    }
    assert!(with_good > 0);
}

#[test]
fn exception_rows_match_table() {
    let rows: Vec<(Family, Vec<(u64, u64)>)> = Family::EXCEPTIONAL
        .iter()
        .map(|&f| {
            let q = [2u64, 3, 8, 27].into_iter().find_map(|q| GroupId::exceptional(f, q).ok()).unwrap();
            (f, theorem_row(&q).unwrap().exceptions)
        })
        .collect();
    for (f, ex) in rows {
        let want: Vec<(u64, u64)> = match f {
            Family::Triality | Family::E6 | Family::F4 | Family::G2 => vec![(3, 13)],
            Family::E8 => vec![(2, 31)],
            _ => vec![],
        };
        assert_eq!(ex, want, "{f:?}");
    }
}

#[test]
fn violations_need_the_e_equal_one_case() {
    // all five exceptions come from r > M, where the bound is |R| <= |T|^(1/K)
    for (f, q, r) in [(Family::Triality, 3u64, 13u64), (Family::E6, 3, 13), (Family::E8, 2, 31), (Family::F4, 3, 13), (Family::G2, 3, 13)] {
        let g = GroupId::exceptional(f, q).unwrap();
        let res = check_theorem1(&g, &BigUint::from(r)).unwrap();
        assert!(!res.holds);
        assert_eq!(res.e, 1);
        assert!(r > theorem_row(&g).unwrap().m as u64);
        assert!(res.sylow_order.to_u64().unwrap() >= r);
    }
}
