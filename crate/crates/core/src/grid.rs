//! Parameter grids for scans.

use std::fmt;
use std::ops::RangeInclusive;

use crate::groups::{q0, Family, GroupId};
use crate::numeric::PrimePower;

/// Which field sizes a grid covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSelection {
    /// Every prime power in `min..=max`.
    Range { min: u64, max: u64 },
    /// Every prime power below the family's `q0`; classical families have
    /// no `q0` and contribute nothing.
    BelowQ0,
    /// Prime powers from the family's `q0` up to `max`.
    FromQ0 { max: u64 },
}

/// A set of groups: families × ranks × field sizes, invalid combinations skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub families: Vec<Family>,
    /// Ranks for classical and alternating families; ignored otherwise.
    pub ranks: RangeInclusive<u32>,
    pub q: QSelection,
}

impl Grid {
    pub fn new(families: Vec<Family>, ranks: RangeInclusive<u32>, q: QSelection) -> Self {
        Grid { families, ranks, q }
    }

    /// Exceptional families, all valid `q < q0`.
    pub fn exceptional_below_q0() -> Self {
        Grid::new(Family::EXCEPTIONAL.to_vec(), 1..=1, QSelection::BelowQ0)
    }

    /// Exceptional families, `q0 <= q <= max`.
    pub fn exceptional_from_q0(max: u64) -> Self {
        Grid::new(Family::EXCEPTIONAL.to_vec(), 1..=1, QSelection::FromQ0 { max })
    }

    /// Classical families with `n <= n_max` and `q <= q_max`.
    pub fn classical(n_max: u32, q_max: u64) -> Self {
        Grid::new(Family::CLASSICAL.to_vec(), 1..=n_max, QSelection::Range { min: 2, max: q_max })
    }

    fn q_bounds(&self, family: Family) -> Option<(u64, u64)> {
        match self.q {
            QSelection::Range { min, max } => Some((min, max)),
            QSelection::BelowQ0 => q0(family).map(|q0| (2, q0 - 1)),
            QSelection::FromQ0 { max } => q0(family).map(|q0| (q0, max)),
        }
    }

    /// The valid groups on the grid, in (family, n, q) order.
    pub fn groups(&self) -> Vec<GroupId> {
        let mut out = Vec::new();
        let mut families = self.families.clone();
        families.sort();
        families.dedup();
        for family in families {
            if family == Family::Alternating {
                out.extend(self.ranks.clone().filter_map(|n| GroupId::alternating(n).ok()));
                continue;
            }
            let Some((lo, hi)) = self.q_bounds(family) else {
                continue;
            };
            let qs: Vec<PrimePower> = (lo.max(2)..=hi)
                .filter_map(|q| PrimePower::from_value(q).ok())
                .collect();
            let ranks: Vec<Option<u32>> = if family.has_rank() {
                self.ranks.clone().map(Some).collect()
            } else {
                vec![None]
            };
            for n in ranks {
                for q in &qs {
                    if let Ok(g) = GroupId::new(family, n, Some(*q)) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<&str> = self.families.iter().map(|f| f.tag()).collect();
        write!(f, "families={} n={}..={} ", tags.join(","), self.ranks.start(), self.ranks.end())?;
        match self.q {
            QSelection::Range { min, max } => write!(f, "q={min}..={max}"),
            QSelection::BelowQ0 => write!(f, "q<q0"),
            QSelection::FromQ0 { max } => write!(f, "q0<=q<={max}"),
        }
    }
}
