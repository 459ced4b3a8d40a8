//! Fixed inputs shared by the benchmarks.

use sylow_core::{Family, GroupId};

/// Exceptional groups of increasing size.
pub fn sample_groups() -> Vec<GroupId> {
    vec![
        GroupId::exceptional(Family::G2, 3).unwrap(),
        GroupId::exceptional(Family::F4, 2).unwrap(),
        GroupId::exceptional(Family::E7, 3).unwrap(),
        GroupId::exceptional(Family::E8, 2).unwrap(),
    ]
}
