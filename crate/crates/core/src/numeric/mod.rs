//! Exact integer number theory used throughout the crate.
//!
//! Everything here works on exact integers. Comparisons that would naturally
//! be phrased with logarithms are phrased as power comparisons instead
//! (see [`pow_le`]).

mod factor;
mod primes;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use factor::{factorize, FactorConfig, Factorization};
pub use primes::{is_prime, is_prime_u64, DETERMINISTIC_BOUND};

use crate::error::{Error, Result};

/// A prime power `p^e` with `e >= 1`, the size of a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    prime: u64,
    exponent: u32,
    value: u64,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if !is_prime_u64(prime) {
            return Err(Error::NotPrime(BigUint::from(prime)));
        }
        if exponent == 0 {
            return Err(Error::InvalidArgument("prime power exponent must be positive".into()));
        }
        let value = prime
            .checked_pow(exponent)
            .ok_or_else(|| Error::InvalidArgument(format!("{prime}^{exponent} exceeds 64 bits")))?;
        Ok(PrimePower { prime, exponent, value })
    }

    /// Recognises `q` as a prime power.
    pub fn from_value(q: u64) -> Result<Self> {
        let not_pp = || Error::NotPrimePower { q: BigUint::from(q) };
        if q < 2 {
            return Err(not_pp());
        }
        let mut p = 2u64;
        let mut rest = q;
        while p.saturating_mul(p) <= rest && rest % p != 0 {
            p += 1;
        }
        if rest % p != 0 {
            p = rest;
        }
        let mut exponent = 0;
        while rest % p == 0 {
            rest /= p;
            exponent += 1;
        }
        if rest != 1 {
            return Err(not_pp());
        }
        PrimePower::new(p, exponent)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn to_biguint(&self) -> BigUint {
        BigUint::from(self.value)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for PrimePower {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value)
    }
}

fn require_prime(r: &BigUint) -> Result<()> {
    if is_prime(r) {
        Ok(())
    } else {
        Err(Error::NotPrime(r.clone()))
    }
}

/// Exponent of the prime `r` in `n`.
pub fn valuation(n: &BigUint, r: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("valuation of 0 is undefined".into()));
    }
    require_prime(r)?;
    if *r == BigUint::from(2u32) {
        return Ok(n.trailing_zeros().unwrap_or(0));
    }
    let mut k = 0;
    let mut rest = n.clone();
    loop {
        let (quot, rem) = rest.div_rem(r);
        if !rem.is_zero() {
            return Ok(k);
        }
        rest = quot;
        k += 1;
    }
}

/// Multiplicative order of `q` modulo the prime `r`.
pub fn mult_order(q: &BigUint, r: &BigUint) -> Result<BigUint> {
    require_prime(r)?;
    if (q % r).is_zero() {
        return Err(Error::NotCoprime { q: q.clone(), r: r.clone() });
    }
    let group_order = r - 1u32;
    let mut order = group_order.clone();
    let q = q % r;
    for (p, _) in factorize(&group_order, &FactorConfig::default())?.iter() {
        while (&order % p).is_zero() {
            let candidate = &order / p;
            if q.modpow(&candidate, r).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Largest `k` with `r^k <= m`, by exact powering.
pub fn floor_log(r: &BigUint, m: &BigUint) -> Result<u32> {
    if *r < BigUint::from(2u32) || m.is_zero() {
        return Err(Error::InvalidArgument(format!("floor_log needs r >= 2 and m >= 1, got r={r}, m={m}")));
    }
    let mut k = 0;
    let mut power = r.clone();
    while power <= *m {
        power *= r;
        k += 1;
    }
    Ok(k)
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius(0) is undefined");
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors(0) is undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient(0) is undefined");
    let mut rest = n;
    let mut out = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if rest > 1 {
        out -= out / rest;
    }
    out
}

/// Exponent of the prime `r` in `n!`, by Legendre's formula.
pub fn legendre_valuation(n: u64, r: u64) -> u64 {
    assert!(r >= 2, "legendre_valuation needs a prime r");
    let mut total = 0;
    let mut rest = n / r;
    while rest > 0 {
        total += rest;
        rest /= r;
    }
    total
}

/// Decides `a^x <= b^y` for `a, b >= 1`.
///
/// Bit lengths give `2^(bits-1) <= a < 2^bits`, which settles most
/// comparisons without powering; the rest are decided by exact powering.
pub fn pow_le(a: &BigUint, x: u32, b: &BigUint, y: u32) -> bool {
    assert!(!a.is_zero() && !b.is_zero(), "pow_le needs positive bases");
    if x == 0 || a.is_one() {
        return true;
    }
    if y == 0 || b.is_one() {
        return false;
    }
    let (abits, bbits) = (a.bits() as u128, b.bits() as u128);
    let (x, y) = (x as u128, y as u128);
    // a^x < 2^(x*abits) and b^y >= 2^(y*(bbits-1))
    if x * abits <= y * (bbits - 1) {
        return true;
    }
    // a^x >= 2^(x*(abits-1)) and b^y < 2^(y*bbits)
    if x * (abits - 1) >= y * bbits {
        return false;
    }
    a.pow(x as u32) <= b.pow(y as u32)
}
