//! Per-instance verification of the Sylow bound and the facts around it.
//!
//! Every check reduces to an exact comparison of integers. Fractional
//! exponents `K = a/b` are cleared by raising both sides to the power `b`.
//! Scans run cells in parallel on the current rayon pool and return records
//! in grid order, so output does not depend on the number of workers.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{euler_product_bounds, phi_eval};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::groups::{
    classical_closed_form, cyclo_factorization, is_listed_exception, order, structural_factorization, theorem_row,
    Family, GroupId, TheoremRow,
};
use crate::numeric::{divisors, factorize, floor_log, is_prime_u64, mult_order, pow_le, valuation, FactorConfig};
use crate::report::{format_ratio, CheckRecord, CheckReport, Outcome, Verdict};
use crate::sylow::{characteristic_sylow, good_contributors, sylow_order, sylow_spectrum};

fn require_lie(g: &GroupId, what: &'static str) -> Result<()> {
    if g.family() == Family::Alternating {
        Err(Error::Alternating(what))
    } else {
        Ok(())
    }
}

fn require_non_characteristic(g: &GroupId, r: &BigUint) -> Result<()> {
    if g.characteristic().map(BigUint::from).as_ref() == Some(r) {
        Err(Error::Characteristic { group: g.to_string(), r: r.clone() })
    } else {
        Ok(())
    }
}

/// One evaluation of `|R| <= |T|^(E/K)` with `E = ⌊log_r M⌋ + 1`, decided as
/// `|R|^a <= |T|^(E·b)` for `K = a/b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheckResult {
    pub group: GroupId,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub r: BigUint,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub sylow_order: BigUint,
    pub e: u32,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub k: Ratio<u64>,
    pub holds: bool,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub rhs: BigUint,
}

fn theorem1_with(g: &GroupId, r: &BigUint, total: &BigUint, row: &TheoremRow) -> Result<BoundCheckResult> {
    require_non_characteristic(g, r)?;
    let sylow = sylow_order(g, r)?;
    let e = floor_log(r, &BigUint::from(row.m))? + 1;
    let (k_num, k_den) = (*row.k.numer() as u32, *row.k.denom() as u32);
    let lhs = sylow.pow(k_num);
    let rhs = total.pow(e * k_den);
    Ok(BoundCheckResult {
        group: g.clone(),
        r: r.clone(),
        sylow_order: sylow,
        e,
        k: row.k,
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}

/// Checks the Sylow bound for one group and one prime `r ≠ p` dividing `|T|`.
pub fn check_theorem1(g: &GroupId, r: &BigUint) -> Result<BoundCheckResult> {
    require_lie(g, "check_theorem1")?;
    theorem1_with(g, r, &order(g)?, &theorem_row(g)?)
}

/// Primes dividing `|T|` other than the characteristic, in increasing order.
pub fn admissible_primes(g: &GroupId, config: &FactorConfig) -> Result<Vec<BigUint>> {
    let spectrum = sylow_spectrum(g, config)?;
    let p = g.characteristic().map(BigUint::from);
    let mut primes: Vec<BigUint> = spectrum
        .entries
        .into_iter()
        .map(|e| e.prime)
        .filter(|r| Some(r) != p.as_ref())
        .collect();
    primes.sort();
    Ok(primes)
}

/// A `(family, q, r)` triple, the form exceptions are listed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExceptionKey {
    pub family: Family,
    pub q: u64,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub r: BigUint,
}

impl ExceptionKey {
    fn of(result: &BoundCheckResult) -> Self {
        ExceptionKey {
            family: result.group.family(),
            q: result.group.q_value().unwrap_or(0),
            r: result.r.clone(),
        }
    }
}

/// A grid cell that could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellFailure {
    pub group: GroupId,
    pub message: String,
}

/// Result of scanning a grid for violations of the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub grid: String,
    /// Number of `(group, r)` pairs checked.
    pub checked: usize,
    pub violations: Vec<BoundCheckResult>,
    /// Listed exceptions that lie on the grid.
    pub expected: Vec<ExceptionKey>,
    pub failures: Vec<CellFailure>,
    #[serde(skip)]
    pub records: Vec<CheckRecord>,
}

impl ScanReport {
    pub fn violation_keys(&self) -> Vec<ExceptionKey> {
        let set: BTreeSet<ExceptionKey> = self.violations.iter().map(ExceptionKey::of).collect();
        set.into_iter().collect()
    }

    /// Whether the violations are exactly the expected exceptions.
    pub fn matches(&self) -> bool {
        self.failures.is_empty() && self.violation_keys() == self.expected
    }

    pub fn verdict(&self, allow_expected: bool) -> Verdict {
        if !self.failures.is_empty() {
            Verdict::ComputationFailed
        } else if (allow_expected && self.matches()) || (!allow_expected && self.violations.is_empty()) {
            Verdict::Pass
        } else {
            Verdict::Violation
        }
    }

    /// Records plus one summary record, as a generic report.
    pub fn into_check_report(self, allow_expected: bool) -> CheckReport {
        let verdict = self.verdict(allow_expected);
        let mut summary = CheckRecord::new("theorem1_summary")
            .value("checked", self.checked)
            .value("violations", self.violations.len())
            .value("expected", self.expected.len())
            .value("failures", self.failures.len());
        let missing: Vec<String> = self
            .expected
            .iter()
            .filter(|k| !self.violation_keys().contains(k))
            .map(|k| format!("{}:{}:{}", k.family, k.q, k.r))
            .collect();
        if !missing.is_empty() {
            summary = summary.value("missing", missing.join(","));
        }
        summary.outcome = match verdict {
            Verdict::Pass => Outcome::Pass,
            Verdict::Violation => Outcome::Fail,
            Verdict::ComputationFailed => Outcome::Error,
        };
        let mut records = self.records;
        records.push(summary);
        CheckReport {
            check: "theorem1".into(),
            grid: self.grid,
            records,
            verdict,
        }
    }
}

enum Cell<T> {
    Done(T),
    Failed(CellFailure),
}

fn failure(g: &GroupId, e: &Error) -> CellFailure {
    CellFailure { group: g.clone(), message: e.to_string() }
}

fn error_record(op: &'static str, g: &GroupId, e: &Error) -> CheckRecord {
    CheckRecord::for_group(op, g).value("error", e).outcome(Outcome::Error)
}

/// Runs the bound for every valid group on the grid and every admissible `r`,
/// and compares the violations with the listed exceptions.
pub fn scan_exceptions(grid: &Grid, config: &FactorConfig) -> ScanReport {
    let groups: Vec<GroupId> = grid.groups().into_iter().filter(|g| g.family() != Family::Alternating).collect();
    let cells: Vec<Cell<Vec<BoundCheckResult>>> = groups
        .par_iter()
        .map(|g| {
            let run = || -> Result<Vec<BoundCheckResult>> {
                let total = order(g)?;
                let row = theorem_row(g)?;
                admissible_primes(g, config)?
                    .iter()
                    .map(|r| theorem1_with(g, r, &total, &row))
                    .collect()
            };
            match run() {
                Ok(v) => Cell::Done(v),
                Err(e) => Cell::Failed(failure(g, &e)),
            }
        })
        .collect();

    let mut report = ScanReport {
        grid: grid.to_string(),
        checked: 0,
        violations: Vec::new(),
        expected: Vec::new(),
        failures: Vec::new(),
        records: Vec::new(),
    };
    let mut expected = BTreeSet::new();
    for (g, cell) in groups.iter().zip(cells) {
        if let Ok(row) = theorem_row(g) {
            for &(q, r) in &row.exceptions {
                if Some(q) == g.q_value() {
                    expected.insert(ExceptionKey { family: g.family(), q, r: BigUint::from(r) });
                }
            }
        }
        match cell {
            Cell::Done(results) => {
                for res in results {
                    report.checked += 1;
                    let listed = is_listed_exception(&res.group, &res.r);
                    let outcome = match (res.holds, listed) {
                        (true, _) => Outcome::Pass,
                        (false, true) => Outcome::Expected,
                        (false, false) => Outcome::Fail,
                    };
                    let mut rec = CheckRecord::for_group("theorem1", &res.group)
                        .with_r(&res.r)
                        .value("sylow_order", &res.sylow_order)
                        .value("E", res.e)
                        .value("K", format_ratio(&res.k))
                        .outcome(outcome);
                    if !res.holds {
                        rec = rec.value("lhs", &res.lhs).value("rhs", &res.rhs);
                        report.violations.push(res);
                    }
                    report.records.push(rec);
                }
            }
            Cell::Failed(f) => {
                report
                    .records
                    .push(CheckRecord::for_group("theorem1", &f.group).value("error", &f.message).outcome(Outcome::Error));
                report.failures.push(f);
            }
        }
    }
    report.expected = expected.into_iter().collect();
    report
}

/// Outcome of the factor-count lemma for one `(g, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCountResult {
    pub group: GroupId,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub r: BigUint,
    /// Multiplicative order of `q` mod `r`.
    pub m: u64,
    /// Indices `i` with `e_i > 0` and `r | Φ_i(q)`.
    pub divisible: Vec<u32>,
    /// `⌊log_r(M/m)⌋ + 1`.
    pub bound: u32,
    /// Every divisible index has the form `m·r^k`.
    pub pattern_ok: bool,
    /// `v_r(|T|)` equals the sum over the divisible factors minus `v_r(d)`.
    pub valuation_ok: bool,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub q_factor: BigUint,
    /// `|R| <= Q(T)^(1 + ⌊log_r M⌋)`.
    pub chain_ok: bool,
}

impl FactorCountResult {
    pub fn holds(&self) -> bool {
        self.divisible.len() as u32 <= self.bound && self.pattern_ok && self.valuation_ok && self.chain_ok
    }
}

/// Counts the cyclotomic factors of `d|T|` divisible by `r` and checks the
/// count, the `m·r^k` pattern, the valuation decomposition and `|R| <= Q(T)^(1+⌊log_r M⌋)`.
pub fn check_factor_count(g: &GroupId, r: &BigUint) -> Result<FactorCountResult> {
    require_lie(g, "check_factor_count")?;
    require_non_characteristic(g, r)?;
    let sylow = sylow_order(g, r)?;
    let q = g.q().unwrap().to_biguint();
    let row = theorem_row(g)?;
    let fact = structural_factorization(g)?;
    let m = mult_order(&q, r)?;
    let m_small = m
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("order of {q} mod {r} exceeds 64 bits")))?;

    let mut divisible = Vec::new();
    let mut structural_valuation = 0u64;
    for (&i, &e) in &fact.exponents {
        let value = phi_eval(i, &q);
        if (&value % r).is_zero() {
            divisible.push(i);
            structural_valuation += e as u64 * valuation(&value, r)?;
        }
    }
    let big_m = BigUint::from(row.m);
    // ⌊log_r(M/m)⌋ = max k with m·r^k <= M
    let mut k = 0u32;
    let mut step = m.clone() * r;
    while step <= big_m {
        k += 1;
        step *= r;
    }
    let bound = k + 1;

    let pattern_ok = divisible.iter().all(|&i| {
        let i = i as u64;
        if i % m_small != 0 {
            return false;
        }
        let mut rest = BigUint::from(i / m_small);
        while (&rest % r).is_zero() {
            rest /= r;
        }
        rest.is_one()
    });
    let d_val = valuation(&BigUint::from(fact.d), r)?;
    let direct = valuation(&order(g)?, r)?;
    let valuation_ok = structural_valuation.checked_sub(d_val) == Some(direct);

    let q_factor = fact.largest_factor(&q).value;
    let e = floor_log(r, &big_m)? + 1;
    let chain_ok = pow_le(&sylow, 1, &q_factor, e);
    Ok(FactorCountResult {
        group: g.clone(),
        r: r.clone(),
        m: m_small,
        divisible,
        bound,
        pattern_ok,
        valuation_ok,
        q_factor,
        chain_ok,
    })
}

/// `Q(T)^n <= |T|^a` for a classical group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QBoundResult {
    pub group: GroupId,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub q_factor: BigUint,
    pub n: u32,
    pub a: u32,
    pub holds: bool,
}

pub fn check_q_bound_classical(g: &GroupId) -> Result<QBoundResult> {
    if !g.family().is_classical() {
        return Err(Error::InvalidArgument(format!("{g} is not classical")));
    }
    let n = g.rank().unwrap();
    let a = match g.family() {
        Family::A | Family::B | Family::C => 1,
        _ => 2,
    };
    let q = g.q().unwrap().to_biguint();
    let q_factor = cyclo_factorization(g)?.largest_factor(&q).value;
    let holds = pow_le(&q_factor, n, &order(g)?, a);
    Ok(QBoundResult { group: g.clone(), q_factor, n, a, holds })
}

/// The `Q(T)` table entry and, for `q >= q0`, `Q(T)^K · d0 <= d|T|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Result {
    pub group: GroupId,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub q_factor: BigUint,
    /// `(i, e_i)` pairs attaining `Q(T)`.
    pub attained_at: Vec<(u32, u32)>,
    pub argmax_ok: bool,
    /// `None` below `q0`.
    pub bound_holds: Option<bool>,
}

impl Table3Result {
    pub fn holds(&self) -> bool {
        self.argmax_ok && self.bound_holds.unwrap_or(true)
    }
}

pub fn check_table3(g: &GroupId) -> Result<Table3Result> {
    let row = theorem_row(g)?;
    let entry = row
        .table3
        .ok_or_else(|| Error::InvalidArgument(format!("{g} is not exceptional")))?;
    let q = g.q().unwrap().to_biguint();
    let fact = structural_factorization(g)?;
    let largest = fact.largest_factor(&q);
    let argmax_ok = fact.exponent(entry.q_index) == entry.q_exponent
        && largest.attained_at.contains(&(entry.q_index, entry.q_exponent));
    let bound_holds = (g.q_value().unwrap() >= entry.q0).then(|| {
        let (k_num, k_den) = (*row.k.numer() as u32, *row.k.denom() as u32);
        let lhs = largest.value.pow(k_num) * BigUint::from(entry.d0).pow(k_den);
        let rhs = fact.evaluate(&q).pow(k_den);
        lhs <= rhs
    });
    Ok(Table3Result {
        group: g.clone(),
        q_factor: largest.value,
        attained_at: largest.attained_at,
        argmax_ok,
        bound_holds,
    })
}

/// `2K >= ℓ` and `M <= 4(ℓ+1)`.
pub fn check_remark2_constants(g: &GroupId) -> Result<bool> {
    let row = theorem_row(g)?;
    let l = row.lie_rank as u64;
    Ok(2 * row.k.numer() >= l * row.k.denom() && row.m as u64 <= 4 * (l + 1))
}

/// The constant check plus `|R|^ℓ <= |T|^(2⌊log_r(4(ℓ+1)r)⌋)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Remark2Result {
    pub group: GroupId,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub r: BigUint,
    pub lie_rank: u32,
    pub constants_ok: bool,
    pub exponent: u32,
    pub bound_holds: bool,
}

impl Remark2Result {
    pub fn holds(&self) -> bool {
        self.constants_ok && self.bound_holds
    }
}

/// Rejects the listed exceptions, which the bound is not claimed for.
pub fn check_remark2(g: &GroupId, r: &BigUint) -> Result<Remark2Result> {
    require_lie(g, "check_remark2")?;
    require_non_characteristic(g, r)?;
    if is_listed_exception(g, r) {
        return Err(Error::InvalidArgument(format!("({g}, {r}) is a listed exception")));
    }
    let row = theorem_row(g)?;
    let l = row.lie_rank;
    let sylow = sylow_order(g, r)?;
    let arg = BigUint::from(4 * (l as u64 + 1)) * r;
    let exponent = 2 * floor_log(r, &arg)?;
    Ok(Remark2Result {
        group: g.clone(),
        r: r.clone(),
        lie_rank: l,
        constants_ok: check_remark2_constants(g)?,
        exponent,
        bound_holds: pow_le(&sylow, l, &order(g)?, exponent),
    })
}

/// Which case of the largest-Sylow classification a group falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ArtinCategory {
    /// The largest Sylow subgroup is a Sylow `p`-subgroup.
    Generic,
    /// `PSL(2, p)`, `p` a Mersenne prime; largest Sylow is for 2.
    MersennePsl2,
    /// `PSL(2, r-1)`, `r` a Fermat prime; largest Sylow is for `r`.
    FermatPsl2,
    /// `PSL(2, 8)`; largest Sylow is for 3.
    Psl28,
    /// `PSU(3, 3)`; largest Sylow is for 2.
    Psu33,
    /// `PSU(4, 2)`; largest Sylow is for 3.
    Psu42,
    /// Non-characteristic largest Sylow not covered by any case above.
    Unexplained,
}

impl ArtinCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ArtinCategory::Generic => "generic",
            ArtinCategory::MersennePsl2 => "mersenne_psl2",
            ArtinCategory::FermatPsl2 => "fermat_psl2",
            ArtinCategory::Psl28 => "psl2_8",
            ArtinCategory::Psu33 => "psu3_3",
            ArtinCategory::Psu42 => "psu4_2",
            ArtinCategory::Unexplained => "unexplained",
        }
    }
}

/// The category predicted from the parameters alone, with the prime of the
/// largest Sylow subgroup it names.
pub fn artin_prediction(g: &GroupId) -> (ArtinCategory, Option<u64>) {
    let (family, n, q) = (g.family(), g.rank().unwrap_or(0), g.q_value().unwrap_or(0));
    let exponent = g.q().map_or(0, |pp| pp.exponent());
    match (family, n) {
        (Family::A, 1) if exponent == 1 && (q + 1).is_power_of_two() => (ArtinCategory::MersennePsl2, Some(2)),
        (Family::A, 1) if q.is_power_of_two() && is_prime_u64(q + 1) => (ArtinCategory::FermatPsl2, Some(q + 1)),
        (Family::A, 1) if q == 8 => (ArtinCategory::Psl28, Some(3)),
        (Family::TwistedA, 2) if q == 3 => (ArtinCategory::Psu33, Some(2)),
        (Family::TwistedA, 3) if q == 2 => (ArtinCategory::Psu42, Some(3)),
        _ => (ArtinCategory::Generic, g.characteristic()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub prime: BigUint,
    pub is_characteristic: bool,
    pub category: ArtinCategory,
}

/// Classifies the largest Sylow subgroup from the computed spectrum.
pub fn classify_largest_sylow(g: &GroupId, config: &FactorConfig) -> Result<Classification> {
    require_lie(g, "classify_largest_sylow")?;
    let spectrum = sylow_spectrum(g, config)?;
    let prime = spectrum.entries[0].prime.clone();
    let is_characteristic = g.characteristic().map(BigUint::from) == Some(prime.clone());
    let category = if is_characteristic {
        ArtinCategory::Generic
    } else {
        match artin_prediction(g) {
            (cat, Some(s)) if cat != ArtinCategory::Generic && BigUint::from(s) == prime => cat,
            _ => ArtinCategory::Unexplained,
        }
    };
    Ok(Classification { prime, is_characteristic, category })
}

/// `|S_p|^3 > |T| >= |S_p|^2` for the Sylow `p`-subgroup `S_p`.
pub fn check_sylow_p_bounds(g: &GroupId) -> Result<bool> {
    let s = characteristic_sylow(g)?;
    let t = order(g)?;
    Ok(!pow_le(&s, 3, &t, 1) && pow_le(&s, 2, &t, 1))
}

/// Whether the at-most-one-good-contributor statement is claimed for `g`.
pub fn buekenhout_applies(g: &GroupId) -> bool {
    match (g.family(), g.rank()) {
        (Family::Alternating, _) => false,
        (Family::A, Some(n)) => n > 2,
        (Family::TwistedA, Some(n)) => n != 2,
        _ => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuekenhoutResult {
    pub group: GroupId,
    /// Good contributors other than the top prime.
    pub good_non_top: Vec<String>,
    /// Good contributors other than the characteristic.
    pub good_non_characteristic: Vec<String>,
    pub undecided: Vec<String>,
    pub holds: bool,
}

/// At most one good contributor besides the top prime, and every good
/// contributor other than the characteristic is at most 5.
pub fn check_buekenhout(g: &GroupId, config: &FactorConfig) -> Result<BuekenhoutResult> {
    require_lie(g, "check_buekenhout")?;
    let report = good_contributors(&sylow_spectrum(g, config)?);
    let good_non_top: Vec<String> = report.non_top().map(|c| c.prime.to_string()).collect();
    let non_char: Vec<&BigUint> = report
        .contributors
        .iter()
        .filter(|c| !c.is_characteristic)
        .map(|c| &c.prime)
        .collect();
    let five = BigUint::from(5u32);
    let holds = report.undecided.is_empty() && good_non_top.len() <= 1 && non_char.iter().all(|r| **r <= five);
    Ok(BuekenhoutResult {
        group: g.clone(),
        good_non_top,
        good_non_characteristic: non_char.iter().map(|p| p.to_string()).collect(),
        undecided: report.undecided.iter().map(|c| c.prime.to_string()).collect(),
        holds,
    })
}

/// Per-degree result for the alternating groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingRow {
    pub n: u32,
    pub p1: u64,
    pub p2: u64,
    #[serde(serialize_with = "crate::report::ser_decimal")]
    pub top_order: BigUint,
    /// `(p1, p2) = (2, 3)` exactly when `n ∉ {5, 6, 7, 9}`.
    pub pair_ok: bool,
    /// `(p1^n1)^1000 <= (n!/2)^363`.
    pub bound_ok: bool,
}

impl AlternatingRow {
    pub fn holds(&self) -> bool {
        self.pair_ok && self.bound_ok
    }
}

/// Degrees where the two largest Sylow subgroups are not for 2 and 3.
pub const ALTERNATING_IRREGULAR: [u32; 4] = [5, 6, 7, 9];

pub fn check_alternating(degrees: RangeInclusive<u32>) -> Result<Vec<AlternatingRow>> {
    if *degrees.start() < 5 {
        return Err(Error::InvalidArgument("alternating degrees start at 5".into()));
    }
    let degrees: Vec<u32> = degrees.collect();
    degrees
        .par_iter()
        .map(|&n| {
            let g = GroupId::alternating(n)?;
            let spectrum = sylow_spectrum(&g, &FactorConfig::default())?;
            let top = &spectrum.entries[0];
            let second = &spectrum.entries[1];
            let p1 = top.prime.to_u64().unwrap();
            let p2 = second.prime.to_u64().unwrap();
            let regular = (p1, p2) == (2, 3);
            Ok(AlternatingRow {
                n,
                p1,
                p2,
                top_order: top.order.clone(),
                pair_ok: regular != ALTERNATING_IRREGULAR.contains(&n),
                bound_ok: pow_le(&top.order, 1000, &order(&g)?, 363),
            })
        })
        .collect()
}

/// `∏_{k|i} Φ_k(q) = q^i - 1` for `i <= i_max`.
pub fn check_minus_identity(q: &BigUint, i_max: u32) -> bool {
    (1..=i_max).all(|i| {
        let prod: BigUint = divisors(i as u64).into_iter().map(|k| phi_eval(k as u32, q)).product();
        prod == q.pow(i) - 1u32
    })
}

/// `∏_{k|2i, k∤i} Φ_k(q) = q^i + 1` for `i <= i_max`.
pub fn check_plus_identity(q: &BigUint, i_max: u32) -> bool {
    (1..=i_max).all(|i| {
        let prod: BigUint = divisors(2 * i as u64)
            .into_iter()
            .filter(|k| i as u64 % k != 0)
            .map(|k| phi_eval(k as u32, q))
            .product();
        prod == q.pow(i) + 1u32
    })
}

/// Pairs `(i, j, r)` with `i < j <= j_max` where the prime `r` divides both
/// `Φ_i(q)` and `Φ_j(q)` but `j / i` is not a positive power of `r`.
pub fn common_divisor_counterexamples(q: &BigUint, j_max: u32) -> Result<Vec<(u32, u32, BigUint)>> {
    let values: Vec<BigUint> = (1..=j_max).map(|i| phi_eval(i, q)).collect();
    let mut bad = Vec::new();
    for i in 1..=j_max {
        for j in i + 1..=j_max {
            let g = values[i as usize - 1].gcd(&values[j as usize - 1]);
            if g.is_one() {
                continue;
            }
            for (r, _) in factorize(&g, &FactorConfig::default())?.iter() {
                let ok = j % i == 0 && {
                    let mut rest = BigUint::from(j / i);
                    let mut k = 0;
                    while (&rest % r).is_zero() {
                        rest /= r;
                        k += 1;
                    }
                    rest.is_one() && k >= 1
                };
                if !ok {
                    bad.push((i, j, r.clone()));
                }
            }
        }
    }
    Ok(bad)
}

/// The Euler-product bounds lie strictly inside `(1 - 1/q - 1/q², 1 - 1/q - 1/q² + 1/q³]`.
pub fn check_euler_product(q: u64, terms: u32) -> Result<bool> {
    let (lower, upper) = euler_product_bounds(&BigUint::from(q), terms)?;
    let q = BigRational::from_integer(q.into());
    let base = BigRational::one() - q.recip() - (&q * &q).recip();
    let top = &base + (&q * &q * &q).recip();
    Ok(lower > base && upper <= top)
}

/// `v_r(Φ_{m r^k}(q)) = 1` for odd primes `r <= r_max`, `r ∤ q`, `k ∈ {1, 2}`
/// and `m r^k <= i_max`, where `m` is the order of `q` mod `r`.
pub fn check_valuation_pattern(q: u64, r_max: u64, i_max: u64) -> Result<bool> {
    let qb = BigUint::from(q);
    for r in (3..=r_max).filter(|&r| is_prime_u64(r) && q % r != 0) {
        let rb = BigUint::from(r);
        let m = mult_order(&qb, &rb)?.to_u64().unwrap();
        for k in 1..=2 {
            let i = m * r.pow(k);
            if i <= i_max && valuation(&phi_eval(i as u32, &qb), &rb)? != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The cyclotomic factorization evaluates to `d|T|`, its largest index is
/// `M`, and classical exponents agree with the closed forms.
pub fn check_group_identity(g: &GroupId) -> Result<bool> {
    let fact = structural_factorization(g)?;
    let q = g.q().unwrap().to_biguint();
    let mut target = order(g)? * fact.d;
    if g.is_tits() {
        target *= 2u32;
    }
    let mut ok = fact.evaluate(&q) == target && fact.max_index() == theorem_row(g)?.m;
    if let Some((e0, exps)) = classical_closed_form(g.family(), g.rank().unwrap_or(0)) {
        ok &= e0 == fact.e0 && exps == fact.exponents;
    }
    Ok(ok)
}

fn for_each_group<F>(grid: &Grid, keep: impl Fn(&GroupId) -> bool, f: F) -> Vec<CheckRecord>
where
    F: Fn(&GroupId) -> Vec<CheckRecord> + Sync + Send,
{
    let groups: Vec<GroupId> = grid.groups().into_iter().filter(|g| keep(g)).collect();
    groups.par_iter().map(f).collect::<Vec<_>>().concat()
}

fn per_prime<F>(op: &'static str, g: &GroupId, config: &FactorConfig, f: F) -> Vec<CheckRecord>
where
    F: Fn(&BigUint) -> Result<CheckRecord>,
{
    match admissible_primes(g, config) {
        Ok(primes) => primes
            .iter()
            .map(|r| f(r).unwrap_or_else(|e| error_record(op, g, &e).with_r(r)))
            .collect(),
        Err(e) => vec![error_record(op, g, &e)],
    }
}

/// Factor-count lemma over a grid.
pub fn run_factor_count(grid: &Grid, config: &FactorConfig) -> CheckReport {
    let records = for_each_group(grid, |g| g.family() != Family::Alternating, |g| {
        per_prime("factor_count", g, config, |r| {
            let res = check_factor_count(g, r)?;
            Ok(CheckRecord::for_group("factor_count", g)
                .with_r(r)
                .value("m", res.m)
                .value("count", res.divisible.len())
                .value("bound", res.bound)
                .value("q_factor", &res.q_factor)
                .outcome(Outcome::from_bool(res.holds())))
        })
    });
    CheckReport::from_records("factor-count", grid.to_string(), records, true)
}

/// `Q(T)^n <= |T|^a` over the classical groups of a grid.
pub fn run_q_bound(grid: &Grid) -> CheckReport {
    let records = for_each_group(grid, |g| g.family().is_classical(), |g| {
        vec![match check_q_bound_classical(g) {
            Ok(res) => CheckRecord::for_group("qbound", g)
                .value("q_factor", &res.q_factor)
                .value("a", res.a)
                .outcome(Outcome::from_bool(res.holds)),
            Err(e) => error_record("qbound", g, &e),
        }]
    });
    CheckReport::from_records("qbound", grid.to_string(), records, true)
}

/// The `Q(T)` table over the exceptional groups of a grid.
pub fn run_table3(grid: &Grid) -> CheckReport {
    let records = for_each_group(grid, |g| g.family().is_exceptional(), |g| {
        vec![match check_table3(g) {
            Ok(res) => {
                let attained: Vec<String> = res.attained_at.iter().map(|(i, e)| format!("{i}^{e}")).collect();
                let mut rec = CheckRecord::for_group("table3", g)
                    .value("q_factor", &res.q_factor)
                    .value("argmax", attained.join(","));
                if let Some(b) = res.bound_holds {
                    rec = rec.value("bound_holds", b);
                }
                rec.outcome(Outcome::from_bool(res.holds()))
            }
            Err(e) => error_record("table3", g, &e),
        }]
    });
    CheckReport::from_records("table3", grid.to_string(), records, true)
}

/// The rank-based form of the bound over a grid; listed exceptions are skipped.
pub fn run_remark2(grid: &Grid, config: &FactorConfig) -> CheckReport {
    let records = for_each_group(grid, |g| g.family() != Family::Alternating, |g| {
        let constants = match check_remark2_constants(g) {
            Ok(ok) => CheckRecord::for_group("remark2_constants", g).outcome(Outcome::from_bool(ok)),
            Err(e) => error_record("remark2_constants", g, &e),
        };
        let mut out = vec![constants];
        out.extend(
            per_prime("remark2", g, config, |r| {
                if is_listed_exception(g, r) {
                    return Ok(CheckRecord::for_group("remark2", g).with_r(r).value("skipped", "listed exception"));
                }
                let res = check_remark2(g, r)?;
                Ok(CheckRecord::for_group("remark2", g)
                    .with_r(r)
                    .value("lie_rank", res.lie_rank)
                    .value("exponent", res.exponent)
                    .outcome(Outcome::from_bool(res.holds())))
            }),
        );
        out
    });
    CheckReport::from_records("remark2", grid.to_string(), records, true)
}

/// Constants of the rank-based bound for every rank up to `n_max`.
pub fn run_remark2_constants(n_max: u32) -> CheckReport {
    let mut records = Vec::new();
    for family in Family::CLASSICAL.iter().chain(Family::EXCEPTIONAL.iter()) {
        let ranks: Vec<Option<u32>> = if family.has_rank() { (1..=n_max).map(Some).collect() } else { vec![None] };
        for n in ranks {
            // any valid field size will do; the constants do not depend on q
            let g = [2u64, 3, 8, 27]
                .iter()
                .find_map(|&q| GroupId::new(*family, n, crate::numeric::PrimePower::from_value(q).ok()).ok());
            if let Some(g) = g {
                let ok = check_remark2_constants(&g).unwrap_or(false);
                records.push(CheckRecord::for_group("remark2_constants", &g).outcome(Outcome::from_bool(ok)));
            }
        }
    }
    CheckReport::from_records("remark2-constants", format!("n<={n_max}"), records, true)
}

/// Largest-Sylow classification and the `|S_p|` size bounds over a grid.
pub fn run_artin(grid: &Grid, config: &FactorConfig) -> CheckReport {
    let records = for_each_group(grid, |g| g.family() != Family::Alternating, |g| {
        let classification = match classify_largest_sylow(g, config) {
            Ok(c) => {
                let (predicted, _) = artin_prediction(g);
                CheckRecord::for_group("artin", g)
                    .value("top_prime", &c.prime)
                    .value("characteristic", c.is_characteristic)
                    .value("category", c.category.as_str())
                    .outcome(Outcome::from_bool(c.category == predicted))
            }
            Err(e) => error_record("artin", g, &e),
        };
        let bounds = match check_sylow_p_bounds(g) {
            Ok(ok) => CheckRecord::for_group("sylow_p_bounds", g).outcome(Outcome::from_bool(ok)),
            Err(e) => error_record("sylow_p_bounds", g, &e),
        };
        vec![classification, bounds]
    });
    CheckReport::from_records("artin", grid.to_string(), records, true)
}

/// Good contributors over the groups of a grid outside types A1, A2, 2A2.
pub fn run_buekenhout(grid: &Grid, config: &FactorConfig) -> CheckReport {
    let records = for_each_group(grid, buekenhout_applies, |g| {
        vec![match check_buekenhout(g, config) {
            Ok(res) => CheckRecord::for_group("buekenhout", g)
                .value("good_non_top", res.good_non_top.join(","))
                .value("good_non_characteristic", res.good_non_characteristic.join(","))
                .outcome(Outcome::from_bool(res.holds)),
            Err(e) => error_record("buekenhout", g, &e),
        }]
    });
    CheckReport::from_records("buekenhout", grid.to_string(), records, true)
}

/// Alternating groups of degree `5..=n_max`.
pub fn run_alternating(n_max: u32) -> CheckReport {
    let records = match check_alternating(5..=n_max) {
        Ok(rows) => rows
            .into_iter()
            .map(|row| {
                let g = GroupId::alternating(row.n).unwrap();
                CheckRecord::for_group("alternating", &g)
                    .value("p1", row.p1)
                    .value("p2", row.p2)
                    .value("top_order", &row.top_order)
                    .value("pair_ok", row.pair_ok)
                    .value("bound_ok", row.bound_ok)
                    .outcome(Outcome::from_bool(row.holds()))
            })
            .collect(),
        Err(e) => vec![CheckRecord::new("alternating").value("error", e).outcome(Outcome::Error)],
    };
    CheckReport::from_records("alt", format!("n=5..={n_max}"), records, true)
}

/// Cyclotomic identities, the common-divisor lemma, the Euler-product
/// inequality and the valuation pattern, per field size.
pub fn run_value_identities(q_values: &[u64], lemma_q_values: &[u64]) -> CheckReport {
    let mut records: Vec<CheckRecord> = q_values
        .par_iter()
        .flat_map_iter(|&q| {
            let qb = BigUint::from(q);
            let rec = |op, ok: Result<bool>| match ok {
                Ok(ok) => CheckRecord::new(op).value("q", q).outcome(Outcome::from_bool(ok)),
                Err(e) => CheckRecord::new(op).value("q", q).value("error", e).outcome(Outcome::Error),
            };
            vec![
                rec("minus_identity", Ok(check_minus_identity(&qb, 210))),
                rec("plus_identity", Ok(check_plus_identity(&qb, 105))),
                rec("euler_product", check_euler_product(q, 40)),
                rec("valuation_pattern", check_valuation_pattern(q, 97, 60)),
            ]
        })
        .collect();
    let lemma: Vec<CheckRecord> = lemma_q_values
        .par_iter()
        .map(|&q| match common_divisor_counterexamples(&BigUint::from(q), 60) {
            Ok(bad) => CheckRecord::new("common_divisor")
                .value("q", q)
                .value("counterexamples", bad.len())
                .outcome(Outcome::from_bool(bad.is_empty())),
            Err(e) => CheckRecord::new("common_divisor").value("q", q).value("error", e).outcome(Outcome::Error),
        })
        .collect();
    records.extend(lemma);
    let qs: Vec<String> = q_values.iter().map(u64::to_string).collect();
    CheckReport::from_records("identities", format!("q={}", qs.join(",")), records, true)
}

/// The factorization identity, `M` and the closed forms over a grid.
pub fn run_group_identities(grid: &Grid) -> CheckReport {
    let records = for_each_group(grid, |g| g.family() != Family::Alternating, |g| {
        vec![match check_group_identity(g) {
            Ok(ok) => CheckRecord::for_group("factorization_identity", g).outcome(Outcome::from_bool(ok)),
            Err(e) => error_record("factorization_identity", g, &e),
        }]
    });
    CheckReport::from_records("identities", grid.to_string(), records, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn exc(f: Family, q: u64) -> GroupId {
        GroupId::exceptional(f, q).unwrap()
    }

    fn lie(f: Family, n: u32, q: u64) -> GroupId {
        GroupId::classical(f, n, q).unwrap()
    }

    #[test]
    fn theorem1_examples() {
        let res = check_theorem1(&exc(Family::G2, 3), &big(13)).unwrap();
        assert!(!res.holds);
        assert_eq!(res.lhs, big(4826809));
        assert_eq!(res.rhs, big(4245696));

        let res = check_theorem1(&exc(Family::Triality, 3), &big(13)).unwrap();
        assert!(!res.holds);
        assert_eq!(res.sylow_order, big(169));

        let res = check_theorem1(&exc(Family::TwistedF4, 2), &big(13)).unwrap();
        assert!(res.holds);
        assert_eq!(res.e, 1);
        assert_eq!(res.k, Ratio::from_integer(6));
    }

    #[test]
    fn theorem1_rejections() {
        assert!(matches!(
            check_theorem1(&exc(Family::G2, 3), &big(3)),
            Err(Error::Characteristic { .. })
        ));
        assert!(matches!(
            check_theorem1(&exc(Family::G2, 3), &big(5)),
            Err(Error::TrivialSylow { .. })
        ));
        assert!(check_theorem1(&GroupId::alternating(6).unwrap(), &big(3)).is_err());
    }

    #[test]
    fn fractional_k_lift() {
        // 2G2(27), K = 7/2: |R|^7 against |T|^(2E)
        let g = exc(Family::TwistedG2, 27);
        let res = check_theorem1(&g, &big(7)).unwrap();
        assert_eq!(res.k, Ratio::new(7, 2));
        assert_eq!(res.lhs, res.sylow_order.pow(7));
        assert_eq!(res.rhs, order(&g).unwrap().pow(2 * res.e));
    }

    #[test]
    fn factor_count_examples() {
        let res = check_factor_count(&exc(Family::E8, 2), &big(31)).unwrap();
        assert_eq!((res.m, res.divisible.clone(), res.bound), (5, vec![5], 1));
        assert!(res.holds());

        let res = check_factor_count(&exc(Family::G2, 3), &big(13)).unwrap();
        assert_eq!((res.m, res.divisible.len(), res.bound), (3, 1, 1));
        assert!(res.holds());

        let res = check_factor_count(&lie(Family::A, 3, 2), &big(3)).unwrap();
        assert_eq!((res.divisible.clone(), res.bound), (vec![2], 1));
        assert!(res.holds());
    }

    #[test]
    fn q_bound_examples() {
        let res = check_q_bound_classical(&lie(Family::A, 1, 4)).unwrap();
        assert_eq!(res.q_factor, big(5));
        assert!(res.holds);
        let res = check_q_bound_classical(&lie(Family::B, 2, 3)).unwrap();
        assert_eq!(res.q_factor, big(16));
        assert!(res.holds);
        let res = check_q_bound_classical(&lie(Family::TwistedA, 2, 3)).unwrap();
        assert_eq!((res.a, res.n), (2, 2));
        assert!(res.holds);
        assert!(check_q_bound_classical(&exc(Family::G2, 3)).is_err());
    }

    #[test]
    fn table3_examples() {
        let res = check_table3(&exc(Family::E7, 9)).unwrap();
        assert_eq!(res.q_factor, big(10).pow(7));
        assert_eq!(res.bound_holds, Some(true));
        assert!(res.holds());

        let res = check_table3(&exc(Family::TwistedG2, 27)).unwrap();
        assert_eq!(res.q_factor, big(703));
        assert!(res.holds());

        let res = check_table3(&exc(Family::G2, 4)).unwrap();
        assert_eq!(res.q_factor, big(25));
        assert_eq!(res.bound_holds, Some(true));

        let res = check_table3(&exc(Family::G2, 3)).unwrap();
        assert_eq!(res.bound_holds, None);
        assert!(res.argmax_ok);
    }

    #[test]
    fn remark2_examples() {
        let res = check_remark2(&lie(Family::TwistedD, 4, 2), &big(17)).unwrap();
        assert_eq!(res.lie_rank, 3);
        assert!(res.holds());
        let res = check_remark2(&exc(Family::E6, 2), &big(73)).unwrap();
        assert!(res.holds());
        let res = check_remark2(&lie(Family::A, 1, 4), &big(5)).unwrap();
        assert_eq!((res.lie_rank, res.exponent), (1, 4));
        assert!(res.holds());
        assert!(check_remark2(&exc(Family::G2, 3), &big(13)).is_err());
    }

    #[test]
    fn artin_examples() {
        let cfg = FactorConfig::default();
        let c = classify_largest_sylow(&lie(Family::A, 1, 7), &cfg).unwrap();
        assert_eq!((c.prime.clone(), c.is_characteristic, c.category), (big(2), false, ArtinCategory::MersennePsl2));
        let c = classify_largest_sylow(&lie(Family::A, 1, 8), &cfg).unwrap();
        assert_eq!((c.prime.clone(), c.is_characteristic, c.category), (big(3), false, ArtinCategory::Psl28));
        let c = classify_largest_sylow(&exc(Family::F4, 3), &cfg).unwrap();
        assert_eq!((c.prime.clone(), c.is_characteristic, c.category), (big(3), true, ArtinCategory::Generic));
        let c = classify_largest_sylow(&lie(Family::A, 1, 16), &cfg).unwrap();
        assert_eq!((c.prime.clone(), c.category), (big(17), ArtinCategory::FermatPsl2));
    }

    #[test]
    fn buekenhout_examples() {
        let cfg = FactorConfig::default();
        let res = check_buekenhout(&exc(Family::G2, 3), &cfg).unwrap();
        assert!(res.holds);
        assert_eq!(res.good_non_top, vec!["2".to_string()]);
        assert!(res.good_non_characteristic.contains(&"2".to_string()));
        let res = check_buekenhout(&lie(Family::B, 2, 3), &cfg).unwrap();
        assert!(res.holds);
        assert_eq!(res.good_non_top, vec!["2".to_string()]);
        let res = check_buekenhout(&exc(Family::E8, 2), &cfg).unwrap();
        assert!(res.holds);
        assert!(!buekenhout_applies(&lie(Family::A, 2, 4)));
        assert!(!buekenhout_applies(&lie(Family::TwistedA, 2, 3)));
        assert!(buekenhout_applies(&lie(Family::TwistedA, 3, 2)));
    }

    #[test]
    fn alternating_examples() {
        let rows = check_alternating(5..=9).unwrap();
        let p1: Vec<u64> = rows.iter().map(|r| r.p1).collect();
        assert_eq!(p1, vec![5, 3, 3, 2, 3]);
        assert_eq!((rows[3].p1, rows[3].p2), (2, 3));
        assert!(rows.iter().all(|r| r.pair_ok));
        assert!(check_alternating(4..=9).is_err());
    }

    #[test]
    fn euler_product_instance() {
        assert!(check_euler_product(3, 10).unwrap());
        assert!(check_euler_product(2, 40).unwrap());
    }
}
