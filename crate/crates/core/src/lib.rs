//! Exact orders, cyclotomic factorizations and Sylow subgroup orders of the
//! finite simple groups of Lie type, with per-instance verification of the
//! bound `|R| <= |T|^((⌊log_r M⌋ + 1)/K)` on non-defining-characteristic
//! Sylow subgroups and of the classical facts around it.
//!
//! All verdicts are decided by exact big-integer arithmetic.

pub mod cyclotomic;
pub mod error;
pub mod grid;
pub mod groups;
pub mod numeric;
pub mod report;
pub mod sylow;
pub mod theorems;

pub use error::{Error, Result};
pub use grid::{Grid, QSelection};
pub use groups::{CycloFactorization, Family, GroupId, OrderShape, TheoremRow};
pub use numeric::{FactorConfig, Factorization, PrimePower};
pub use report::{CheckRecord, CheckReport, Outcome, Verdict};
pub use sylow::{SylowEntry, SylowSpectrum};
pub use theorems::{BoundCheckResult, ScanReport};
