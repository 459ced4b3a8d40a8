//! Deterministic primality testing.
//!
//! Trial division by a few small primes followed by strong-pseudoprime tests
//! to the first thirteen prime bases. That witness set has no strong
//! pseudoprimes below [`DETERMINISTIC_BOUND`], so below it the answer is a
//! proof. Above it extra bases are used and the answer is a strong probable
//! prime verdict.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Smallest integer that is a strong pseudoprime to all bases 2, 3, ..., 41.
pub const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_BASES: [u64; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Primality of a machine word. Always deterministic.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 43 * 43 {
        return true;
    }
    BASES.iter().all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &BigUint, a: u64) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = BigUint::from(a).modpow(&d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Primality of an arbitrary nonnegative integer.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in BASES.iter().chain(EXTRA_BASES.iter()) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let deterministic = n.to_u128().is_some_and(|v| v < DETERMINISTIC_BOUND);
    if !BASES.iter().all(|&a| strong_probable_prime(n, a)) {
        return false;
    }
    deterministic || EXTRA_BASES.iter().all(|&a| strong_probable_prime(n, a))
}

/// Primes up to `bound` by a plain sieve.
pub(crate) fn primes_up_to(bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Returns `(root, k)` with `root^k = n` and `k >= 2` maximal, if `n` is a perfect power.
pub(crate) fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n <= &BigUint::from(3u32) {
        return None;
    }
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let root = n.nth_root(k);
        if root > BigUint::one() && root.pow(k) == *n {
            return Some((root, k));
        }
    }
    None
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
