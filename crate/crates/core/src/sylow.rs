//! Sylow subgroup orders and the Sylow spectrum of a simple group.
//!
//! The order of a Sylow `r`-subgroup is always read off the exact group order
//! by direct valuation. Factoring is only used to find which primes occur,
//! and is done on the small pieces `Φ_i(q)` rather than on `|T|` itself.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::cyclotomic::phi_eval;
use crate::error::{Error, Result};
use crate::groups::{order, order_shape, structural_factorization, Family, GroupId};
use crate::numeric::{factorize, is_prime, legendre_valuation, pow_le, valuation, FactorConfig, Factorization};

/// One prime of `|T|` together with its Sylow order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylowEntry {
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub prime: BigUint,
    pub exponent: u64,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub order: BigUint,
}

/// All Sylow orders of a group, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylowSpectrum {
    pub group: GroupId,
    pub entries: Vec<SylowEntry>,
}

impl SylowSpectrum {
    /// Product of all Sylow orders.
    pub fn product(&self) -> BigUint {
        self.entries.iter().map(|e| &e.order).product()
    }

    pub fn get(&self, prime: &BigUint) -> Option<&SylowEntry> {
        self.entries.iter().find(|e| &e.prime == prime)
    }

    /// `log(p_1^n_1) / log(p_i^n_i)` as a float. Display only.
    pub fn ratio_estimate(&self, i: usize) -> f64 {
        log_estimate(&self.entries[0].order) / log_estimate(&self.entries[i].order)
    }
}

fn log_estimate(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn alternating_degree(g: &GroupId) -> Option<u64> {
    (g.family() == Family::Alternating).then(|| g.rank().unwrap() as u64)
}

/// `|R|` for a Sylow `r`-subgroup `R` of `g`.
///
/// Returns [`Error::TrivialSylow`] rather than 1 when `r` does not divide `|T|`.
pub fn sylow_order(g: &GroupId, r: &BigUint) -> Result<BigUint> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r.clone()));
    }
    let exponent = match alternating_degree(g) {
        Some(n) => match r.to_u64() {
            Some(small) => legendre_valuation(n, small).saturating_sub(u64::from(small == 2)),
            None => 0,
        },
        None => valuation(&order(g)?, r)?,
    };
    if exponent == 0 {
        return Err(Error::TrivialSylow { group: g.to_string(), r: r.clone() });
    }
    Ok(r.pow(exponent as u32))
}

/// Order of a Sylow `p`-subgroup, `p` the characteristic: `q^e0`, or `2^11`
/// for the Tits group.
pub fn characteristic_sylow(g: &GroupId) -> Result<BigUint> {
    let shape = order_shape(g)?;
    if g.is_tits() {
        return Ok(BigUint::from(2u32).pow(11));
    }
    Ok(g.q().unwrap().to_biguint().pow(shape.e0))
}

type PhiKey = (u32, u64);

fn phi_factor_cache() -> &'static RwLock<HashMap<PhiKey, Arc<Factorization>>> {
    static CACHE: OnceLock<RwLock<HashMap<PhiKey, Arc<Factorization>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Factorization of `Φ_i(q)`, memoized across calls.
pub fn phi_factorization(i: u32, q: u64, config: &FactorConfig) -> Result<Arc<Factorization>> {
    if let Some(f) = phi_factor_cache().read().expect("cache poisoned").get(&(i, q)) {
        return Ok(Arc::clone(f));
    }
    let f = Arc::new(factorize(&phi_eval(i, &BigUint::from(q)), config)?);
    phi_factor_cache()
        .write()
        .expect("cache poisoned")
        .insert((i, q), Arc::clone(&f));
    Ok(f)
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| crate::numeric::is_prime_u64(k)).collect()
}

/// Full Sylow spectrum, sorted by decreasing Sylow order.
pub fn sylow_spectrum(g: &GroupId, config: &FactorConfig) -> Result<SylowSpectrum> {
    let mut entries = Vec::new();
    if let Some(n) = alternating_degree(g) {
        for p in primes_up_to(n) {
            let e = legendre_valuation(n, p) - u64::from(p == 2);
            if e > 0 {
                entries.push(SylowEntry {
                    prime: BigUint::from(p),
                    exponent: e,
                    order: BigUint::from(p).pow(e as u32),
                });
            }
        }
    } else {
        let total = order(g)?;
        let q = g.q_value().unwrap();
        let mut primes = BTreeSet::new();
        primes.insert(BigUint::from(g.characteristic().unwrap()));
        for &i in structural_factorization(g)?.exponents.keys() {
            for p in phi_factorization(i, q, config)?.primes() {
                primes.insert(p.clone());
            }
        }
        for p in primes {
            let e = valuation(&total, &p)?;
            if e > 0 {
                let order = p.pow(e as u32);
                entries.push(SylowEntry { prime: p, exponent: e, order });
            }
        }
        let product: BigUint = entries.iter().map(|e| &e.order).product();
        if product != total {
            return Err(Error::Internal(format!("Sylow orders of {g} do not multiply to |T|")));
        }
    }
    entries.sort_by(|a, b| b.order.cmp(&a.order));
    Ok(SylowSpectrum { group: g.clone(), entries })
}

/// The two largest Sylow orders.
pub fn largest_two(spectrum: &SylowSpectrum) -> Result<(&SylowEntry, &SylowEntry)> {
    match spectrum.entries.as_slice() {
        [first, second, ..] => Ok((first, second)),
        _ => Err(Error::Internal(format!(
            "|{}| has fewer than two prime divisors",
            spectrum.group
        ))),
    }
}

/// Rational bounds on `log₂3` from its continued fraction, each certified by
/// comparing `2^num` with `3^den`. Entries are `(num, den, is_lower_bound)`.
pub fn log2_3_brackets() -> &'static [(u32, u32, bool)] {
    static BRACKETS: OnceLock<Vec<(u32, u32, bool)>> = OnceLock::new();
    BRACKETS.get_or_init(|| {
        // log_base(arg) with base, arg > 1 rational; each step peels the
        // integer part a = max{k : base^k <= arg} and inverts.
        let mut base = BigRational::from_integer(2.into());
        let mut arg = BigRational::from_integer(3.into());
        let (mut p_prev, mut p) = (0u64, 1u64);
        let (mut q_prev, mut q) = (1u64, 0u64);
        let mut out = Vec::new();
        for _ in 0..12 {
            let mut a = 0u64;
            let mut power = BigRational::one();
            while &power * &base <= arg {
                power *= &base;
                a += 1;
            }
            (p_prev, p) = (p, a * p + p_prev);
            (q_prev, q) = (q, a * q + q_prev);
            let two = BigUint::from(2u32).pow(p as u32);
            let three = BigUint::from(3u32).pow(q as u32);
            assert_ne!(two, three);
            out.push((p as u32, q as u32, two < three));
            let rest = &arg / &power;
            arg = std::mem::replace(&mut base, rest);
        }
        out
    })
}

/// Outcome of one good-contributor comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Goodness {
    Good,
    NotGood,
    /// The brackets could not separate the two sides within the work limit.
    Undecided,
}

/// Largest `exponent * bits` product allowed when powering for a comparison.
const BRACKET_WORK_LIMIT: u64 = 1 << 24;

/// Decides `log(top) / log(other) <= log 3 / log 2` exactly.
pub fn compare_to_threshold(top: &BigUint, other: &BigUint) -> Goodness {
    if top <= other {
        return Goodness::Good;
    }
    // equality is only possible as top = 3^k, other = 2^k
    let (three, two) = (BigUint::from(3u32), BigUint::from(2u32));
    if let (Ok(k3), Ok(k2)) = (valuation(top, &three), valuation(other, &two)) {
        if k3 == k2 && *top == three.pow(k3 as u32) && *other == two.pow(k2 as u32) {
            return Goodness::Good;
        }
    }
    for &(num, den, lower) in log2_3_brackets() {
        if u64::from(den) * top.bits() > BRACKET_WORK_LIMIT {
            break;
        }
        // top^den <= other^num means the ratio is at most num/den
        let within = pow_le(top, den, other, num);
        if lower && within {
            return Goodness::Good;
        }
        if !lower && !within {
            return Goodness::NotGood;
        }
    }
    Goodness::Undecided
}

/// One prime of the spectrum judged against the largest Sylow order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contributor {
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub prime: BigUint,
    pub is_characteristic: bool,
    pub verdict: Goodness,
    /// The float estimate of the ratio was within `1e-6` of `log₂3`.
    pub near_tie: bool,
}

/// Good contributors of a group: primes `p_i` with
/// `log(p_1^n_1)/log(p_i^n_i) <= log 3/log 2`. The top prime always qualifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodContributorReport {
    pub group: GroupId,
    pub contributors: Vec<Contributor>,
    pub undecided: Vec<Contributor>,
    pub near_tie: bool,
}

impl GoodContributorReport {
    /// Good contributors other than the top prime `p_1`.
    pub fn non_top(&self) -> impl Iterator<Item = &Contributor> + '_ {
        self.contributors.iter().skip(1)
    }
}

pub fn good_contributors(spectrum: &SylowSpectrum) -> GoodContributorReport {
    let characteristic = spectrum.group.characteristic().map(BigUint::from);
    let top = &spectrum.entries[0].order;
    let threshold = 3f64.log2();
    let mut contributors = Vec::new();
    let mut undecided = Vec::new();
    let mut near_tie = false;
    for (i, entry) in spectrum.entries.iter().enumerate() {
        let tie = (spectrum.ratio_estimate(i) - threshold).abs() < 1e-6;
        near_tie |= tie;
        let verdict = compare_to_threshold(top, &entry.order);
        let c = Contributor {
            prime: entry.prime.clone(),
            is_characteristic: characteristic.as_ref() == Some(&entry.prime),
            verdict,
            near_tie: tie,
        };
        match verdict {
            Goodness::Good => contributors.push(c),
            Goodness::Undecided => undecided.push(c),
            Goodness::NotGood => {}
        }
    }
    GoodContributorReport {
        group: spectrum.group.clone(),
        contributors,
        undecided,
        near_tie,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn spectrum(g: &GroupId) -> Vec<(u64, u64)> {
        sylow_spectrum(g, &FactorConfig::default())
            .unwrap()
            .entries
            .iter()
            .map(|e| (e.prime.to_u64().unwrap(), e.order.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn sylow_order_examples() {
        let e8 = GroupId::exceptional(Family::E8, 2).unwrap();
        assert_eq!(sylow_order(&e8, &big(31)).unwrap(), big(961));
        let g2 = GroupId::exceptional(Family::G2, 3).unwrap();
        assert_eq!(sylow_order(&g2, &big(13)).unwrap(), big(13));
        let a1 = GroupId::classical(Family::A, 1, 4).unwrap();
        assert_eq!(sylow_order(&a1, &big(2)).unwrap(), big(4));
    }

    #[test]
    fn trivial_sylow_is_an_error() {
        let a1 = GroupId::classical(Family::A, 1, 5).unwrap();
        assert!(matches!(sylow_order(&a1, &big(11)), Err(Error::TrivialSylow { .. })));
        assert!(matches!(sylow_order(&a1, &big(4)), Err(Error::NotPrime(_))));
        let alt = GroupId::alternating(7).unwrap();
        assert!(matches!(sylow_order(&alt, &big(11)), Err(Error::TrivialSylow { .. })));
        assert_eq!(sylow_order(&alt, &big(2)).unwrap(), big(8));
    }

    #[test]
    fn characteristic_examples() {
        let a1 = GroupId::classical(Family::A, 1, 8).unwrap();
        assert_eq!(characteristic_sylow(&a1).unwrap(), big(8));
        let f4 = GroupId::exceptional(Family::F4, 3).unwrap();
        assert_eq!(characteristic_sylow(&f4).unwrap(), big(3).pow(24));
        assert_eq!(sylow_order(&f4, &big(3)).unwrap(), big(3).pow(24));
        let tits = GroupId::exceptional(Family::TwistedF4, 2).unwrap();
        assert_eq!(characteristic_sylow(&tits).unwrap(), big(2048));
        assert_eq!(sylow_order(&tits, &big(2)).unwrap(), big(2048));
    }

    #[test]
    fn spectrum_examples() {
        let a1 = GroupId::classical(Family::A, 1, 5).unwrap();
        assert_eq!(spectrum(&a1), vec![(5, 5), (2, 4), (3, 3)]);
        let tits = GroupId::exceptional(Family::TwistedF4, 2).unwrap();
        assert_eq!(spectrum(&tits), vec![(2, 2048), (3, 27), (5, 25), (13, 13)]);
        let g2 = GroupId::exceptional(Family::G2, 3).unwrap();
        assert_eq!(spectrum(&g2), vec![(3, 729), (2, 64), (13, 13), (7, 7)]);
    }

    #[test]
    fn largest_two_examples() {
        let pick = |g: GroupId| {
            let s = sylow_spectrum(&g, &FactorConfig::default()).unwrap();
            let (a, b) = largest_two(&s).unwrap();
            ((a.prime.to_u64().unwrap(), a.order.to_u64().unwrap()), (b.prime.to_u64().unwrap(), b.order.to_u64().unwrap()))
        };
        assert_eq!(pick(GroupId::classical(Family::A, 1, 5).unwrap()), ((5, 5), (2, 4)));
        assert_eq!(pick(GroupId::exceptional(Family::G2, 3).unwrap()), ((3, 729), (2, 64)));
        assert_eq!(pick(GroupId::alternating(9).unwrap()), ((3, 81), (2, 64)));
    }

    #[test]
    fn brackets_alternate_around_log2_3() {
        let b = log2_3_brackets();
        let first: Vec<(u32, u32)> = b.iter().take(8).map(|&(p, q, _)| (p, q)).collect();
        assert_eq!(first, vec![(1, 1), (2, 1), (3, 2), (8, 5), (19, 12), (65, 41), (84, 53), (485, 306)]);
        for (k, &(_, _, lower)) in b.iter().enumerate() {
            assert_eq!(lower, k % 2 == 0);
        }
    }

    #[test]
    fn threshold_decisions() {
        assert_eq!(compare_to_threshold(&big(5), &big(5)), Goodness::Good);
        assert_eq!(compare_to_threshold(&big(5), &big(4)), Goodness::Good);
        assert_eq!(compare_to_threshold(&big(729), &big(32)), Goodness::NotGood);
        assert_eq!(compare_to_threshold(&big(81), &big(64)), Goodness::Good);
        // exact tie 3^k against 2^k
        assert_eq!(compare_to_threshold(&big(27), &big(8)), Goodness::Good);
        assert_eq!(compare_to_threshold(&big(3).pow(40), &big(2).pow(40)), Goodness::Good);
        assert_eq!(compare_to_threshold(&big(729), &big(64)), Goodness::Good);
        assert_eq!(compare_to_threshold(&(big(3).pow(40) * 2u32), &big(2).pow(40)), Goodness::NotGood);
        // too close to the threshold for the brackets
        assert_eq!(compare_to_threshold(&(big(3).pow(40) + 1u32), &big(2).pow(40)), Goodness::Undecided);
    }

    #[test]
    fn good_contributor_examples() {
        let s = sylow_spectrum(&GroupId::classical(Family::A, 1, 5).unwrap(), &FactorConfig::default()).unwrap();
        let report = good_contributors(&s);
        let primes: Vec<u64> = report.contributors.iter().map(|c| c.prime.to_u64().unwrap()).collect();
        assert_eq!(primes, vec![5, 2, 3]);
        assert!(report.contributors[0].is_characteristic);

        let s = sylow_spectrum(&GroupId::exceptional(Family::G2, 3).unwrap(), &FactorConfig::default()).unwrap();
        let report = good_contributors(&s);
        // 3^6 against 2^6 sits exactly on the threshold
        let primes: Vec<u64> = report.contributors.iter().map(|c| c.prime.to_u64().unwrap()).collect();
        assert_eq!(primes, vec![3, 2]);
        assert!(report.undecided.is_empty());
    }
}
