//! The finite simple groups of Lie type (plus the alternating groups), their
//! orders, cyclotomic factorizations and per-family constants.
//!
//! A group order is stored as an [`OrderShape`]: a power of `q`, a list of
//! `q^k ∓ 1` factors and the rule for the number `d` of diagonal outer
//! automorphisms, so that `|T| = q^e0 * ∏ factors / d`. Resolving each factor
//! through `q^k - 1 = ∏_{j|k} Φ_j(q)` and `q^k + 1 = ∏_{j|2k, j∤k} Φ_j(q)`
//! gives the [`CycloFactorization`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::cyclotomic::phi_eval;
use crate::error::{Error, Result};
use crate::numeric::{divisors, PrimePower};

/// Row label of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A_n(q) = PSL(n+1, q)`
    A,
    /// `²A_n(q) = PSU(n+1, q)`
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    /// Suzuki groups `²B₂(q)`
    Suzuki,
    /// `³D₄(q)`
    Triality,
    E6,
    TwistedE6,
    E7,
    E8,
    F4,
    /// `²F₄(q)'`, which is `²F₄(q)` except for the Tits group at `q = 2`
    TwistedF4,
    G2,
    /// Ree groups `²G₂(q)`
    TwistedG2,
    Alternating,
}

impl Family {
    pub const CLASSICAL: [Family; 6] = [
        Family::A,
        Family::TwistedA,
        Family::B,
        Family::C,
        Family::D,
        Family::TwistedD,
    ];

    pub const EXCEPTIONAL: [Family; 10] = [
        Family::Suzuki,
        Family::Triality,
        Family::E6,
        Family::TwistedE6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::TwistedF4,
        Family::G2,
        Family::TwistedG2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::Suzuki => "2B2",
            Family::Triality => "3D4",
            Family::E6 => "E6",
            Family::TwistedE6 => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::TwistedF4 => "2F4d",
            Family::G2 => "G2",
            Family::TwistedG2 => "2G2",
            Family::Alternating => "ALT",
        }
    }

    pub fn is_classical(self) -> bool {
        Self::CLASSICAL.contains(&self)
    }

    pub fn is_exceptional(self) -> bool {
        Self::EXCEPTIONAL.contains(&self)
    }

    /// Whether the family is parametrized by a rank `n`.
    pub fn has_rank(self) -> bool {
        self.is_classical() || self == Family::Alternating
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let family = match upper.as_str() {
            "A" => Family::A,
            "2A" => Family::TwistedA,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "2D" => Family::TwistedD,
            "2B2" => Family::Suzuki,
            "3D4" => Family::Triality,
            "E6" => Family::E6,
            "2E6" => Family::TwistedE6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" => Family::F4,
            "2F4D" | "2F4" => Family::TwistedF4,
            "G2" => Family::G2,
            "2G2" => Family::TwistedG2,
            "ALT" => Family::Alternating,
            _ => return Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        };
        Ok(family)
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// One simple group `T(q)`, or `Alt_n`.
///
/// Only values satisfying the family's validity condition can be constructed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId {
    family: Family,
    rank: Option<u32>,
    q: Option<PrimePower>,
}

fn is_odd_power(q: &PrimePower, p: u64, min_m: u32) -> bool {
    q.prime() == p && q.exponent() % 2 == 1 && q.exponent() > 2 * min_m
}

impl GroupId {
    pub fn new(family: Family, rank: Option<u32>, q: Option<PrimePower>) -> Result<Self> {
        let id = GroupId { family, rank, q };
        let fail = |condition: &'static str| {
            Err(Error::InvalidGroup {
                group: id.describe_raw(),
                condition,
            })
        };
        if family.has_rank() && rank.is_none() {
            return fail("a rank parameter n");
        }
        if !family.has_rank() && rank.is_some() {
            return fail("no rank parameter");
        }
        if family == Family::Alternating {
            if q.is_some() {
                return fail("no field size");
            }
        } else if q.is_none() {
            return fail("a field size q");
        }
        let n = rank.unwrap_or(0);
        let qv = q.as_ref().map(PrimePower::value).unwrap_or(0);
        let ok = match family {
            Family::A => n >= 1 && !(n == 1 && (qv == 2 || qv == 3)),
            Family::TwistedA => n >= 2 && (n, qv) != (2, 2),
            Family::B => n >= 2 && (n, qv) != (2, 2),
            Family::C => n >= 3 && qv % 2 == 1,
            Family::D | Family::TwistedD => n >= 4,
            Family::Suzuki => is_odd_power(q.as_ref().unwrap(), 2, 1),
            Family::TwistedF4 => is_odd_power(q.as_ref().unwrap(), 2, 0),
            Family::G2 => qv >= 3,
            Family::TwistedG2 => is_odd_power(q.as_ref().unwrap(), 3, 1),
            Family::Alternating => n >= 5,
            _ => true,
        };
        if ok {
            Ok(id)
        } else {
            fail(condition_text(family))
        }
    }

    /// A classical group `family_n(q)`.
    pub fn classical(family: Family, n: u32, q: u64) -> Result<Self> {
        Self::new(family, Some(n), Some(PrimePower::from_value(q)?))
    }

    /// An exceptional group `family(q)`.
    pub fn exceptional(family: Family, q: u64) -> Result<Self> {
        Self::new(family, None, Some(PrimePower::from_value(q)?))
    }

    pub fn alternating(n: u32) -> Result<Self> {
        Self::new(Family::Alternating, Some(n), None)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    pub fn q(&self) -> Option<&PrimePower> {
        self.q.as_ref()
    }

    /// Field size as an integer (absent for alternating groups).
    pub fn q_value(&self) -> Option<u64> {
        self.q.as_ref().map(PrimePower::value)
    }

    /// Defining characteristic `p` (absent for alternating groups).
    pub fn characteristic(&self) -> Option<u64> {
        self.q.as_ref().map(PrimePower::prime)
    }

    /// The Tits group `²F₄(2)'`.
    pub fn is_tits(&self) -> bool {
        self.family == Family::TwistedF4 && self.q_value() == Some(2)
    }

    fn describe_raw(&self) -> String {
        let mut s = self.family.tag().to_string();
        if let Some(n) = self.rank {
            s.push_str(&format!("_{n}"));
        }
        if let Some(q) = &self.q {
            s.push_str(&format!("({q})"));
        }
        s
    }
}

fn condition_text(family: Family) -> &'static str {
    match family {
        Family::A => "n >= 1, (n,q) not in {(1,2),(1,3)}",
        Family::TwistedA => "n >= 2, (n,q) != (2,2)",
        Family::B => "n >= 2, (n,q) != (2,2)",
        Family::C => "n >= 3, q odd",
        Family::D | Family::TwistedD => "n >= 4",
        Family::Suzuki => "q = 2^(2m+1), m >= 1",
        Family::TwistedF4 => "q = 2^(2m+1), m >= 0",
        Family::G2 => "q >= 3",
        Family::TwistedG2 => "q = 3^(2m+1), m >= 1",
        Family::Alternating => "n >= 5",
        _ => "q a prime power",
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Alternating => write!(f, "Alt({})", self.rank.unwrap_or(0)),
            Family::TwistedF4 => write!(f, "2F4({})'", self.q.as_ref().map_or(0, PrimePower::value)),
            _ => write!(f, "{}", self.describe_raw()),
        }
    }
}

impl Serialize for GroupId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sign of a `q^k ∓ 1` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `q^k - 1`
    Minus,
    /// `q^k + 1`
    Plus,
}

/// One factor of a universal group order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderFactor {
    Binomial { degree: u32, sign: Sign },
    /// A product of cyclotomic values, stored already resolved
    /// (`q^8 + q^4 + 1 = Φ₃Φ₆Φ₁₂`).
    Cyclotomic(Vec<u32>),
}

impl OrderFactor {
    fn minus(degree: u32) -> Self {
        OrderFactor::Binomial { degree, sign: Sign::Minus }
    }

    fn plus(degree: u32) -> Self {
        OrderFactor::Binomial { degree, sign: Sign::Plus }
    }

    /// Cyclotomic indices whose values multiply to this factor.
    pub fn cyclotomic_indices(&self) -> Vec<u32> {
        match self {
            OrderFactor::Binomial { degree, sign: Sign::Minus } => {
                divisors(*degree as u64).into_iter().map(|k| k as u32).collect()
            }
            OrderFactor::Binomial { degree, sign: Sign::Plus } => divisors(2 * *degree as u64)
                .into_iter()
                .filter(|k| *degree as u64 % k != 0)
                .map(|k| k as u32)
                .collect(),
            OrderFactor::Cyclotomic(indices) => indices.clone(),
        }
    }

    /// Value at `q`, computed directly (not through cyclotomic values).
    pub fn value(&self, q: &BigUint) -> BigUint {
        match self {
            OrderFactor::Binomial { degree, sign: Sign::Minus } => q.pow(*degree) - 1u32,
            OrderFactor::Binomial { degree, sign: Sign::Plus } => q.pow(*degree) + 1u32,
            OrderFactor::Cyclotomic(indices) => indices.iter().map(|&i| phi_eval(i, q)).product(),
        }
    }
}

impl fmt::Display for OrderFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderFactor::Binomial { degree, sign } => {
                let s = if *sign == Sign::Minus { '-' } else { '+' };
                if *degree == 1 {
                    write!(f, "(q {s} 1)")
                } else {
                    write!(f, "(q^{degree} {s} 1)")
                }
            }
            OrderFactor::Cyclotomic(indices) => {
                let parts: Vec<String> = indices.iter().map(|i| format!("Phi_{i}")).collect();
                write!(f, "({})", parts.join("*"))
            }
        }
    }
}

/// Rule for the number of diagonal outer automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalRule {
    One,
    /// `gcd(k, q - 1)`
    GcdQMinusOne(u64),
    /// `gcd(k, q + 1)`
    GcdQPlusOne(u64),
    /// `gcd(k, q^n - 1)`
    GcdQPowMinusOne { k: u64, n: u32 },
    /// `gcd(k, q^n + 1)`
    GcdQPowPlusOne { k: u64, n: u32 },
}

impl DiagonalRule {
    pub fn evaluate(&self, q: u64) -> u64 {
        let q_pow_mod = |k: u64, n: u32| {
            (0..n).fold(1u64, |acc, _| acc * (q % k) % k)
        };
        match *self {
            DiagonalRule::One => 1,
            DiagonalRule::GcdQMinusOne(k) => k.gcd(&(q - 1)),
            DiagonalRule::GcdQPlusOne(k) => k.gcd(&(q + 1)),
            DiagonalRule::GcdQPowMinusOne { k, n } => k.gcd(&((q_pow_mod(k, n) + k - 1) % k)),
            DiagonalRule::GcdQPowPlusOne { k, n } => k.gcd(&((q_pow_mod(k, n) + 1) % k)),
        }
    }
}

impl fmt::Display for DiagonalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagonalRule::One => write!(f, "1"),
            DiagonalRule::GcdQMinusOne(k) => write!(f, "gcd({k}, q-1)"),
            DiagonalRule::GcdQPlusOne(k) => write!(f, "gcd({k}, q+1)"),
            DiagonalRule::GcdQPowMinusOne { k, n } => write!(f, "gcd({k}, q^{n}-1)"),
            DiagonalRule::GcdQPowPlusOne { k, n } => write!(f, "gcd({k}, q^{n}+1)"),
        }
    }
}

/// `|T| = q^e0 * ∏ factors / d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderShape {
    pub e0: u32,
    pub factors: Vec<OrderFactor>,
    pub diagonal: DiagonalRule,
}

impl OrderShape {
    /// `q^e0 * ∏ factors`, the order before dividing by `d`.
    pub fn universal_order(&self, q: &BigUint) -> BigUint {
        self.factors
            .iter()
            .fold(q.pow(self.e0), |acc, f| acc * f.value(q))
    }
}

impl fmt::Display for OrderShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.e0)?;
        for factor in &self.factors {
            write!(f, "{factor}")?;
        }
        write!(f, " / {}", self.diagonal)
    }
}

fn shape_for(family: Family, n: u32) -> OrderShape {
    use OrderFactor as F;
    let minus = |degrees: &[u32]| degrees.iter().map(|&k| F::minus(k)).collect::<Vec<_>>();
    let (e0, factors, diagonal) = match family {
        Family::A => (
            n * (n + 1) / 2,
            (2..=n + 1).map(F::minus).collect(),
            DiagonalRule::GcdQMinusOne(n as u64 + 1),
        ),
        Family::TwistedA => (
            n * (n + 1) / 2,
            (2..=n + 1)
                .map(|i| if i % 2 == 0 { F::minus(i) } else { F::plus(i) })
                .collect(),
            DiagonalRule::GcdQPlusOne(n as u64 + 1),
        ),
        Family::B | Family::C => (
            n * n,
            (1..=n).map(|i| F::minus(2 * i)).collect(),
            DiagonalRule::GcdQMinusOne(2),
        ),
        Family::D => (
            n * (n - 1),
            std::iter::once(F::minus(n)).chain((1..n).map(|i| F::minus(2 * i))).collect(),
            DiagonalRule::GcdQPowMinusOne { k: 4, n },
        ),
        Family::TwistedD => (
            n * (n - 1),
            std::iter::once(F::plus(n)).chain((1..n).map(|i| F::minus(2 * i))).collect(),
            DiagonalRule::GcdQPowPlusOne { k: 4, n },
        ),
        Family::Suzuki => (2, vec![F::plus(2), F::minus(1)], DiagonalRule::One),
        Family::Triality => (
            12,
            vec![F::Cyclotomic(vec![3, 6, 12]), F::minus(6), F::minus(2)],
            DiagonalRule::One,
        ),
        Family::G2 => (6, minus(&[6, 2]), DiagonalRule::One),
        Family::F4 => (24, minus(&[2, 6, 8, 12]), DiagonalRule::One),
        Family::E6 => (36, minus(&[2, 5, 6, 8, 9, 12]), DiagonalRule::GcdQMinusOne(3)),
        Family::TwistedE6 => (
            36,
            vec![F::minus(2), F::plus(5), F::minus(6), F::minus(8), F::plus(9), F::minus(12)],
            DiagonalRule::GcdQPlusOne(3),
        ),
        Family::E7 => (63, minus(&[2, 6, 8, 10, 12, 14, 18]), DiagonalRule::GcdQMinusOne(2)),
        Family::E8 => (120, minus(&[2, 8, 12, 14, 18, 20, 24, 30]), DiagonalRule::One),
        Family::TwistedF4 => (
            12,
            vec![F::plus(6), F::minus(4), F::plus(3), F::minus(1)],
            DiagonalRule::One,
        ),
        Family::TwistedG2 => (3, vec![F::plus(3), F::minus(1)], DiagonalRule::One),
        Family::Alternating => unreachable!("alternating groups have no order shape"),
    };
    OrderShape { e0, factors, diagonal }
}

fn require_lie(g: &GroupId, what: &'static str) -> Result<()> {
    if g.family == Family::Alternating {
        Err(Error::Alternating(what))
    } else {
        Ok(())
    }
}

/// Order shape of a group of Lie type.
pub fn order_shape(g: &GroupId) -> Result<OrderShape> {
    require_lie(g, "order_shape")?;
    Ok(shape_for(g.family, g.rank.unwrap_or(0)))
}

/// Number `d` of diagonal outer automorphisms.
pub fn diagonal_d(g: &GroupId) -> Result<u64> {
    require_lie(g, "diagonal_d")?;
    Ok(order_shape(g)?.diagonal.evaluate(g.q_value().unwrap()))
}

/// Exact order `|T|`. For the Tits group this is `|²F₄(2)|/2`; for `Alt_n` it is `n!/2`.
pub fn order(g: &GroupId) -> Result<BigUint> {
    if g.family == Family::Alternating {
        let n = g.rank.unwrap();
        let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
        return Ok(fact / 2u32);
    }
    let shape = order_shape(g)?;
    let q = g.q().unwrap().to_biguint();
    let universal = shape.universal_order(&q);
    let d = shape.diagonal.evaluate(g.q_value().unwrap());
    let (mut t, rem) = universal.div_rem(&BigUint::from(d));
    if !rem.is_zero() {
        return Err(Error::Internal(format!("d = {d} does not divide the order of {g}")));
    }
    if g.is_tits() {
        t /= 2u32;
    }
    Ok(t)
}

/// The data of `d|T| = q^e0 ∏ Φ_i(q)^e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloFactorization {
    pub d: u64,
    pub e0: u32,
    pub exponents: BTreeMap<u32, u32>,
}

/// The largest `Φ_i(q)^e_i` and every `(i, e_i)` attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargestFactor {
    pub value: BigUint,
    pub attained_at: Vec<(u32, u32)>,
}

impl CycloFactorization {
    /// Largest index present.
    pub fn max_index(&self) -> u32 {
        self.exponents.keys().next_back().copied().unwrap_or(0)
    }

    pub fn exponent(&self, i: u32) -> u32 {
        self.exponents.get(&i).copied().unwrap_or(0)
    }

    /// `q^e0 ∏ Φ_i(q)^e_i`, which equals `d|T|`.
    pub fn evaluate(&self, q: &BigUint) -> BigUint {
        self.exponents
            .iter()
            .fold(q.pow(self.e0), |acc, (&i, &e)| acc * phi_eval(i, q).pow(e))
    }

    /// `Q(T)`, the largest of the factors `Φ_i(q)^e_i`.
    pub fn largest_factor(&self, q: &BigUint) -> LargestFactor {
        let mut best = LargestFactor {
            value: BigUint::zero(),
            attained_at: Vec::new(),
        };
        for (&i, &e) in &self.exponents {
            let v = phi_eval(i, q).pow(e);
            if v > best.value {
                best = LargestFactor { value: v, attained_at: vec![(i, e)] };
            } else if v == best.value {
                best.attained_at.push((i, e));
            }
        }
        best
    }
}

fn resolve(shape: &OrderShape, d: u64) -> CycloFactorization {
    let mut exponents = BTreeMap::new();
    for factor in &shape.factors {
        for i in factor.cyclotomic_indices() {
            *exponents.entry(i).or_insert(0) += 1;
        }
    }
    CycloFactorization { d, e0: shape.e0, exponents }
}

/// Cyclotomic factorization of `d|T|`, by resolving each order factor.
///
/// The Tits group is rejected: halving `|²F₄(2)|` leaves no such shape.
pub fn cyclo_factorization(g: &GroupId) -> Result<CycloFactorization> {
    if g.is_tits() {
        return Err(Error::TitsGroup);
    }
    structural_factorization(g)
}

/// Like [`cyclo_factorization`], but for the Tits group returns the
/// factorization of `²F₄(2)` itself, which is what the `M` and `Q(T)`
/// structure refers to.
pub fn structural_factorization(g: &GroupId) -> Result<CycloFactorization> {
    require_lie(g, "cyclo_factorization")?;
    let shape = order_shape(g)?;
    let d = shape.diagonal.evaluate(g.q_value().unwrap());
    Ok(resolve(&shape, d))
}

/// Closed-form exponents of the classical factorizations, written directly
/// from the floor formulas rather than by resolving factors. Returns
/// `(e0, {i: e_i})`.
pub fn classical_closed_form(family: Family, n: u32) -> Option<(u32, BTreeMap<u32, u32>)> {
    let lcm2 = |i: u32| if i % 2 == 0 { i } else { 2 * i };
    let mut ex = BTreeMap::new();
    let mut put = |i: u32, e: u32| {
        if e > 0 {
            ex.insert(i, e);
        }
    };
    let e0 = match family {
        Family::A => {
            put(1, n);
            for i in 2..=n + 1 {
                put(i, (n + 1) / i);
            }
            n * (n + 1) / 2
        }
        Family::TwistedA => {
            put(2, n);
            for i in 1..=2 * (n + 1) {
                if i == 2 {
                    continue;
                }
                if i % 4 == 2 {
                    put(i, 2 * (n + 1) / i);
                } else {
                    put(i, (n + 1) / lcm2(i));
                }
            }
            n * (n + 1) / 2
        }
        Family::B | Family::C => {
            for i in 1..=2 * n {
                put(i, 2 * n / lcm2(i));
            }
            n * n
        }
        Family::D => {
            for i in 1..=2 * n {
                if n % i != 0 && (2 * n) % i == 0 {
                    put(i, 2 * n / i - 1);
                } else {
                    put(i, 2 * n / lcm2(i));
                }
            }
            n * (n - 1)
        }
        Family::TwistedD => {
            for i in 1..=2 * n {
                if n % i != 0 {
                    put(i, 2 * n / lcm2(i));
                } else {
                    put(i, 2 * n / lcm2(i) - 1);
                }
            }
            n * (n - 1)
        }
        _ => return None,
    };
    Some((e0, ex))
}

/// Lie rank `ℓ`.
pub fn lie_rank(g: &GroupId) -> Result<u32> {
    require_lie(g, "lie_rank")?;
    let n = g.rank.unwrap_or(0);
    Ok(match g.family {
        Family::A | Family::B | Family::C | Family::D => n,
        Family::TwistedA => n.div_ceil(2),
        Family::TwistedD => n - 1,
        Family::Suzuki | Family::TwistedG2 => 1,
        Family::Triality | Family::TwistedF4 | Family::G2 => 2,
        Family::E6 => 6,
        Family::TwistedE6 | Family::F4 => 4,
        Family::E7 => 7,
        Family::E8 => 8,
        Family::Alternating => unreachable!(),
    })
}

/// Constants of the bound for exceptional families: `Q(T) = Φ_index^exponent`,
/// and `Q(T)^K · d0 <= d|T|` for `q >= q0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Table3Entry {
    pub q_index: u32,
    pub q_exponent: u32,
    pub d0: u64,
    pub q0: u64,
}

/// Per-family constants of the Sylow bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremRow {
    pub k: Ratio<u64>,
    pub m: u32,
    pub lie_rank: u32,
    /// `(q, r)` pairs where the bound fails.
    pub exceptions: Vec<(u64, u64)>,
    pub table3: Option<Table3Entry>,
}

fn table3(family: Family) -> Option<Table3Entry> {
    let (q_index, q_exponent, d0, q0) = match family {
        Family::Suzuki => (4, 1, 1, 8),
        Family::Triality => (3, 2, 1, 4),
        Family::E6 => (3, 3, 3, 5),
        Family::TwistedE6 => (2, 6, 3, 7),
        Family::E7 => (2, 7, 2, 9),
        Family::E8 => (2, 8, 1, 7),
        Family::F4 => (2, 4, 1, 7),
        Family::TwistedF4 => (4, 2, 1, 8),
        Family::G2 => (2, 2, 1, 4),
        Family::TwistedG2 => (6, 1, 1, 27),
        _ => return None,
    };
    Some(Table3Entry { q_index, q_exponent, d0, q0 })
}

/// The `q0` threshold of an exceptional family.
pub fn q0(family: Family) -> Option<u64> {
    table3(family).map(|t| t.q0)
}

/// Static constants `K`, `M`, `ℓ`, the exception list and, for exceptional
/// families, the `Q(T)` data.
pub fn theorem_row(g: &GroupId) -> Result<TheoremRow> {
    require_lie(g, "theorem_row")?;
    let n = g.rank.unwrap_or(0) as u64;
    let whole = |k: u64| Ratio::from_integer(k);
    let (k, m) = match g.family {
        Family::A => (whole(n), n + 1),
        Family::TwistedA => (Ratio::new(n, 2), if n % 2 == 0 { 2 * (n + 1) } else { 2 * n }),
        Family::B | Family::C => (whole(n), 2 * n),
        Family::D => (Ratio::new(n, 2), 2 * (n - 1)),
        Family::TwistedD => (Ratio::new(n, 2), 2 * n),
        Family::Suzuki => (whole(2), 4),
        Family::Triality => (whole(6), 12),
        Family::E6 => (whole(12), 12),
        Family::TwistedE6 => (whole(12), 18),
        Family::E7 => (whole(18), 18),
        Family::E8 => (whole(29), 30),
        Family::F4 => (whole(12), 12),
        Family::TwistedF4 => (whole(6), 12),
        Family::G2 => (whole(6), 6),
        Family::TwistedG2 => (Ratio::new(7, 2), 6),
        Family::Alternating => unreachable!(),
    };
    let exceptions = match g.family {
        Family::Triality | Family::E6 | Family::F4 | Family::G2 => vec![(3, 13)],
        Family::E8 => vec![(2, 31)],
        _ => Vec::new(),
    };
    Ok(TheoremRow {
        k,
        m: m as u32,
        lie_rank: lie_rank(g)?,
        exceptions,
        table3: table3(g.family),
    })
}

/// Whether `(g, r)` is one of the listed exceptions to the bound.
pub fn is_listed_exception(g: &GroupId, r: &BigUint) -> bool {
    let Ok(row) = theorem_row(g) else {
        return false;
    };
    let q = g.q_value().unwrap_or(0);
    row.exceptions
        .iter()
        .any(|&(eq, er)| eq == q && BigUint::from(er) == *r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie(f: Family, n: u32, q: u64) -> GroupId {
        GroupId::classical(f, n, q).unwrap()
    }

    fn exc(f: Family, q: u64) -> GroupId {
        GroupId::exceptional(f, q).unwrap()
    }

    fn map(pairs: &[(u32, u32)]) -> BTreeMap<u32, u32> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn validity_conditions() {
        assert!(GroupId::classical(Family::A, 1, 2).is_err());
        assert!(GroupId::classical(Family::A, 1, 3).is_err());
        assert!(GroupId::classical(Family::A, 1, 4).is_ok());
        assert!(GroupId::classical(Family::TwistedA, 2, 2).is_err());
        assert!(GroupId::classical(Family::B, 2, 2).is_err());
        assert!(GroupId::classical(Family::C, 3, 4).is_err());
        assert!(GroupId::classical(Family::C, 3, 5).is_ok());
        assert!(GroupId::classical(Family::D, 3, 5).is_err());
        assert!(GroupId::exceptional(Family::Suzuki, 2).is_err());
        assert!(GroupId::exceptional(Family::Suzuki, 8).is_ok());
        assert!(GroupId::exceptional(Family::Suzuki, 16).is_err());
        assert!(GroupId::exceptional(Family::TwistedF4, 2).is_ok());
        assert!(GroupId::exceptional(Family::G2, 2).is_err());
        assert!(GroupId::exceptional(Family::TwistedG2, 3).is_err());
        assert!(GroupId::exceptional(Family::TwistedG2, 27).is_ok());
        assert!(GroupId::alternating(4).is_err());
        assert!(GroupId::exceptional(Family::E8, 6).is_err());
        assert!(GroupId::new(Family::E8, Some(3), Some(PrimePower::from_value(2).unwrap())).is_err());
    }

    #[test]
    fn condition_named_in_error() {
        match GroupId::classical(Family::A, 1, 2) {
            Err(Error::InvalidGroup { condition, .. }) => {
                assert_eq!(condition, "n >= 1, (n,q) not in {(1,2),(1,3)}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_examples() {
        let s = order_shape(&lie(Family::A, 1, 4)).unwrap();
        assert_eq!(s.e0, 1);
        assert_eq!(s.factors, vec![OrderFactor::minus(2)]);
        assert_eq!(s.diagonal, DiagonalRule::GcdQMinusOne(2));

        let s = order_shape(&lie(Family::B, 3, 3)).unwrap();
        assert_eq!(s.e0, 9);
        assert_eq!(s.factors, vec![OrderFactor::minus(2), OrderFactor::minus(4), OrderFactor::minus(6)]);

        let s = order_shape(&exc(Family::E8, 2)).unwrap();
        assert_eq!(s.e0, 120);
        let degrees: Vec<u32> = s
            .factors
            .iter()
            .map(|f| match f {
                OrderFactor::Binomial { degree, sign: Sign::Minus } => *degree,
                _ => panic!(),
            })
            .collect();
        assert_eq!(degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
        assert!(order_shape(&GroupId::alternating(5).unwrap()).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order(&lie(Family::A, 1, 4)).unwrap(), BigUint::from(60u32));
        assert_eq!(order(&exc(Family::G2, 3)).unwrap(), BigUint::from(4245696u32));
        assert_eq!(order(&exc(Family::TwistedF4, 2)).unwrap(), BigUint::from(17971200u32));
        assert_eq!(order(&GroupId::alternating(5).unwrap()).unwrap(), BigUint::from(60u32));
    }

    #[test]
    fn factorization_examples() {
        let f = cyclo_factorization(&lie(Family::A, 2, 4)).unwrap();
        assert_eq!((f.d, f.e0), (3, 3));
        assert_eq!(f.exponents, map(&[(1, 2), (2, 1), (3, 1)]));
        assert_eq!(f.evaluate(&BigUint::from(4u32)), BigUint::from(60480u32));

        for q in [2, 3, 4, 5] {
            let f = cyclo_factorization(&exc(Family::Triality, q)).unwrap();
            assert_eq!(f.e0, 12);
            assert_eq!(f.exponents, map(&[(1, 2), (2, 2), (3, 2), (6, 2), (12, 1)]));
        }
        let f = cyclo_factorization(&exc(Family::G2, 5)).unwrap();
        assert_eq!(f.exponents, map(&[(1, 2), (2, 2), (3, 1), (6, 1)]));
        assert_eq!(f.max_index(), 6);
        assert_eq!(cyclo_factorization(&exc(Family::TwistedF4, 2)), Err(Error::TitsGroup));
        assert_eq!(structural_factorization(&exc(Family::TwistedF4, 2)).unwrap().max_index(), 12);
    }

    #[test]
    fn lie_rank_examples() {
        assert_eq!(lie_rank(&lie(Family::TwistedD, 4, 2)).unwrap(), 3);
        assert_eq!(lie_rank(&lie(Family::TwistedA, 4, 2)).unwrap(), 2);
        assert_eq!(lie_rank(&exc(Family::E8, 2)).unwrap(), 8);
        assert!(lie_rank(&GroupId::alternating(6).unwrap()).is_err());
    }

    #[test]
    fn theorem_row_examples() {
        let row = theorem_row(&exc(Family::TwistedG2, 27)).unwrap();
        assert_eq!(row.k, Ratio::new(7, 2));
        assert_eq!(row.m, 6);
        let t3 = row.table3.unwrap();
        assert_eq!((t3.q_index, t3.q_exponent, t3.q0), (6, 1, 27));

        let row = theorem_row(&lie(Family::TwistedA, 3, 2)).unwrap();
        assert_eq!(row.k, Ratio::new(3, 2));
        assert_eq!(row.m, 6);

        let row = theorem_row(&exc(Family::E8, 2)).unwrap();
        assert_eq!((row.k, row.m), (Ratio::from_integer(29), 30));
        assert_eq!(row.exceptions, vec![(2, 31)]);
        assert!(theorem_row(&GroupId::alternating(5).unwrap()).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal_d(&lie(Family::A, 1, 5)).unwrap(), 2);
        assert_eq!(diagonal_d(&exc(Family::E6, 4)).unwrap(), 3);
        assert_eq!(diagonal_d(&exc(Family::F4, 3)).unwrap(), 1);
        assert_eq!(diagonal_d(&lie(Family::TwistedD, 4, 3)).unwrap(), 2);
        assert_eq!(diagonal_d(&lie(Family::D, 4, 3)).unwrap(), 4);
        assert_eq!(diagonal_d(&lie(Family::D, 5, 3)).unwrap(), 2);
        assert!(diagonal_d(&GroupId::alternating(5).unwrap()).is_err());
    }

    #[test]
    fn family_tags_round_trip() {
        for f in Family::CLASSICAL.iter().chain(Family::EXCEPTIONAL.iter()) {
            assert_eq!(f.tag().parse::<Family>().unwrap(), *f);
        }
        assert_eq!("alt".parse::<Family>().unwrap(), Family::Alternating);
        assert!("H4".parse::<Family>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(lie(Family::TwistedA, 2, 3).to_string(), "2A_2(3)");
        assert_eq!(exc(Family::TwistedF4, 2).to_string(), "2F4(2)'");
        assert_eq!(GroupId::alternating(9).unwrap().to_string(), "Alt(9)");
    }
}
