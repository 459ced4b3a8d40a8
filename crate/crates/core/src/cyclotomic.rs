//! Cyclotomic polynomials over the integers.
//!
//! `Φ_i` is obtained by dividing `x^i - 1` by `Φ_d` for every proper divisor
//! `d` of `i`; each division must leave a zero remainder, so a construction
//! error cannot go unnoticed. Polynomials with index up to the cache cap are
//! memoized.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::divisors;

/// Default largest index kept in the shared cache.
pub const DEFAULT_MEMO_CAP: u32 = 256;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial { coeffs: Vec::new() };
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// Division by a monic polynomial, returning `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(
            divisor.leading().is_some_and(|c| c.is_one()),
            "divisor must be monic"
        );
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::new(Vec::new()), IntPolynomial::new(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Value at an integer point, by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Memo table for cyclotomic polynomials, safe to share between threads.
#[derive(Debug)]
pub struct CyclotomicCache {
    cap: u32,
    table: RwLock<HashMap<u32, Arc<IntPolynomial>>>,
}

impl CyclotomicCache {
    pub fn with_cap(cap: u32) -> Self {
        CyclotomicCache {
            cap,
            table: RwLock::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn get(&self, i: u32) -> Arc<IntPolynomial> {
        assert!(i >= 1, "cyclotomic index must be positive");
        if let Some(p) = self.table.read().expect("cache poisoned").get(&i) {
            return Arc::clone(p);
        }
        let mut poly = IntPolynomial::x_pow_minus_one(i as usize);
        for d in divisors(i as u64) {
            let d = d as u32;
            if d == i {
                continue;
            }
            let (quot, rem) = poly.div_rem_monic(&self.get(d));
            assert!(rem.is_zero(), "x^{i}-1 not divisible by Phi_{d}");
            poly = quot;
        }
        let poly = Arc::new(poly);
        if i <= self.cap {
            self.table
                .write()
                .expect("cache poisoned")
                .entry(i)
                .or_insert_with(|| Arc::clone(&poly));
        }
        poly
    }
}

impl Default for CyclotomicCache {
    fn default() -> Self {
        Self::with_cap(DEFAULT_MEMO_CAP)
    }
}

fn shared_cache() -> &'static CyclotomicCache {
    static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
    CACHE.get_or_init(CyclotomicCache::default)
}

/// The `i`-th cyclotomic polynomial.
pub fn cyclotomic_poly(i: u32) -> Arc<IntPolynomial> {
    shared_cache().get(i)
}

/// `Φ_i(q)` for `q >= 2`.
pub fn phi_eval(i: u32, q: &BigUint) -> BigUint {
    assert!(*q >= BigUint::from(2u32), "phi_eval needs q >= 2");
    let value = cyclotomic_poly(i).eval(&BigInt::from_biguint(Sign::Plus, q.clone()));
    value
        .to_biguint()
        .expect("cyclotomic values are positive for q >= 2")
}

/// Rational bounds `lower <= ∏_{i>=1} (1 - q^-i) <= upper`.
///
/// `upper` is the partial product over `i <= terms`; `lower` multiplies it by
/// `1 - q^-terms / (q - 1)`, a lower bound for the remaining tail.
pub fn euler_product_bounds(q: &BigUint, terms: u32) -> Result<(BigRational, BigRational)> {
    if *q < BigUint::from(2u32) || terms == 0 {
        return Err(Error::InvalidArgument(format!(
            "euler_product_bounds needs q >= 2 and at least one term, got q={q}, terms={terms}"
        )));
    }
    let q = BigInt::from_biguint(Sign::Plus, q.clone());
    let one = BigRational::one();
    let mut upper = one.clone();
    let mut power = BigInt::one();
    for _ in 0..terms {
        power *= &q;
        upper *= &one - BigRational::new(BigInt::one(), power.clone());
    }
    let tail = BigRational::new(BigInt::one(), &power * (&q - 1));
    let lower = &upper * (&one - tail);
    if !lower.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "tail bound is not positive with {terms} terms; use more"
        )));
    }
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::totient;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(*cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(12).to_string(), "x^4 - x^2 + 1");
        assert_eq!(cyclotomic_poly(1).to_string(), "x - 1");
    }

    #[test]
    fn first_coefficient_above_one() {
        // Phi_105 is the first cyclotomic polynomial with a coefficient of absolute value 2
        let p = cyclotomic_poly(105);
        assert_eq!(p.degree(), Some(48));
        let max = p.coefficients().iter().map(|c| c.abs()).max().unwrap();
        assert_eq!(max, BigInt::from(2));
        let small = (1..105)
            .all(|i| cyclotomic_poly(i).coefficients().iter().all(|c| c.abs() <= BigInt::one()));
        assert!(small);
    }

    #[test]
    fn degrees_are_totients() {
        for i in 1..=300u32 {
            let p = cyclotomic_poly(i);
            assert_eq!(p.degree(), Some(totient(i as u64) as usize), "Phi_{i}");
            assert!(p.leading().unwrap().is_one());
        }
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(phi_eval(2, &big(8)), big(9));
        assert_eq!(phi_eval(12, &big(3)), big(73));
        assert_eq!(phi_eval(4, &big(2)), big(5));
    }

    #[test]
    fn cache_above_cap_still_correct() {
        let cache = CyclotomicCache::with_cap(4);
        assert_eq!(*cache.get(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cache.table.read().unwrap().len(), 4);
    }

    #[test]
    fn euler_bounds_single_term() {
        let (_, upper) = euler_product_bounds(&big(2), 1).unwrap();
        assert_eq!(upper, BigRational::new(BigInt::one(), BigInt::from(2)));
    }

    #[test]
    fn euler_bounds_width() {
        let (lower, upper) = euler_product_bounds(&big(2), 20).unwrap();
        assert!(lower <= upper);
        let width = &upper - &lower;
        assert!(width < BigRational::new(BigInt::one(), BigInt::from(10_000)));
        // the product is 0.2887880950866...
        let (lower, upper) = euler_product_bounds(&big(2), 40).unwrap();
        let below = BigRational::new(BigInt::from(28878809508u64), BigInt::from(100_000_000_000u64));
        let above = BigRational::new(BigInt::from(28878809509u64), BigInt::from(100_000_000_000u64));
        assert!(below < upper && lower < above);
    }

    #[test]
    fn euler_bounds_degenerate() {
        assert!(euler_product_bounds(&big(1), 5).is_err());
        assert!(euler_product_bounds(&big(2), 0).is_err());
    }
}
