//! Integer factorization: trial division, then Brent's variant of Pollard rho
//! on whatever cofactor is left. Every prime that ends up in a
//! [`Factorization`] is re-verified before the result is returned.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::primes::{gcd_u64, is_prime, is_prime_u64, mul_mod, perfect_power, primes_up_to};
use crate::error::{Error, Result};

/// Effort limits for [`factorize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial division runs over primes up to this bound.
    pub trial_bound: u64,
    /// Total rho iterations allowed across all cofactors of one call.
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 10_000,
            rho_iterations: 1 << 26,
        }
    }
}

/// Prime factorization as a map from prime to exponent, ordered by prime.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    entries: BTreeMap<BigUint, u32>,
}

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking primality.
    /// Repeated primes are merged and zero exponents dropped.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut out = Factorization::new();
        for (p, e) in pairs {
            if !is_prime(&p) {
                return Err(Error::NotPrime(p));
            }
            out.add(p, e);
        }
        Ok(out)
    }

    pub(crate) fn add(&mut self, p: BigUint, e: u32) {
        if e > 0 {
            *self.entries.entry(p).or_insert(0) += e;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, u32)> + '_ {
        self.entries.iter().map(|(p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> + '_ {
        self.entries.keys()
    }

    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> BigUint {
        self.iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e))
    }

    /// Factorization of the product.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.add(p.clone(), e);
        }
        out
    }

    /// Factorization of `self^k`.
    pub fn pow(&self, k: u32) -> Factorization {
        Factorization {
            entries: self
                .entries
                .iter()
                .filter(|_| k > 0)
                .map(|(p, e)| (p.clone(), e * k))
                .collect(),
        }
    }

    /// Factorization of `self / other`, or `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &Factorization) -> Option<Factorization> {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            let have = out.entries.get_mut(p)?;
            if *have < e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                out.entries.remove(p);
            }
        }
        Some(out)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in self.iter() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.len()))?;
        for (p, e) in self.iter() {
            map.serialize_entry(&p.to_string(), &e)?;
        }
        map.end()
    }
}

struct Exhausted;

struct Budget(u64);

impl Budget {
    fn spend(&mut self, n: u64) -> std::result::Result<(), Exhausted> {
        if self.0 < n {
            self.0 = 0;
            return Err(Exhausted);
        }
        self.0 -= n;
        Ok(())
    }
}

/// Brent's cycle-finding rho on a word-sized modulus. `Ok(None)` means this
/// polynomial constant failed and another should be tried.
fn brent_u64(n: u64, c: u64, budget: &mut Budget) -> std::result::Result<Option<u64>, Exhausted> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0u64, 0u64);
    while g == 1 {
        x = y;
        budget.spend(r)?;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            budget.spend(steps)?;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            budget.spend(1)?;
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    Ok((g != n).then_some(g))
}

fn brent_big(n: &BigUint, c: u64, budget: &mut Budget) -> std::result::Result<Option<BigUint>, Exhausted> {
    const BATCH: u64 = 128;
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a >= b { a - b } else { b - a };
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    while g == one {
        x = y.clone();
        budget.spend(r)?;
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            budget.spend(steps)?;
            for _ in 0..steps {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            budget.spend(1)?;
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    Ok((&g != n).then_some(g))
}

/// Finds a nontrivial divisor of the composite `n`.
fn split(n: &BigUint, budget: &mut Budget) -> std::result::Result<BigUint, Exhausted> {
    if let Some((root, _)) = perfect_power(n) {
        return Ok(root);
    }
    for c in 1u64.. {
        let found = match n.to_u64() {
            Some(small) => brent_u64(small, c, budget)?.map(BigUint::from),
            None => brent_big(n, c, budget)?,
        };
        if let Some(d) = found {
            return Ok(d);
        }
    }
    unreachable!()
}

/// Complete prime factorization of `n >= 1`.
///
/// Returns [`Error::IncompleteFactorization`] naming the stubborn cofactor if
/// the rho budget in `config` runs out; it never returns a partial answer.
pub fn factorize(n: &BigUint, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut out = Factorization::new();
    let mut rest = n.clone();
    for p in primes_up_to(config.trial_bound) {
        if let Some(small) = rest.to_u64() {
            if p.saturating_mul(p) > small {
                break;
            }
        }
        let mut e = 0;
        loop {
            let (quot, rem) = rest.div_rem(&BigUint::from(p));
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        out.add(BigUint::from(p), e);
    }

    let mut budget = Budget(config.rho_iterations);
    let mut pending = vec![rest];
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            out.add(c, 1);
            continue;
        }
        match split(&c, &mut budget) {
            Ok(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            Err(Exhausted) => return Err(Error::IncompleteFactorization { cofactor: c }),
        }
    }

    for p in out.primes() {
        let ok = match p.to_u64() {
            Some(small) => is_prime_u64(small),
            None => is_prime(p),
        };
        if !ok {
            return Err(Error::Internal(format!("factorization produced composite {p}")));
        }
    }
    if out.value() != *n {
        return Err(Error::Internal(format!("factorization of {n} does not reassemble")));
    }
    Ok(out)
}
