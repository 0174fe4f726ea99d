use fixedbitset::FixedBitSet;

use super::Partition;
use crate::error::{Error, Result};
use crate::table::ObjectSet;
use crate::Rational;

/// Lower and upper approximation of a target set under a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationResult {
    pub target: ObjectSet,
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    pub boundary: ObjectSet,
    /// `|lower| / |upper|`, and 1 when `upper` is empty.
    pub accuracy: Rational,
}

impl ApproximationResult {
    pub fn is_definable(&self) -> bool {
        self.boundary.is_clear()
    }
}

pub fn is_definable(result: &ApproximationResult) -> bool {
    result.is_definable()
}

/// Lower approximation is the union of blocks inside `target`; upper is the
/// union of blocks meeting it.
pub fn approximate(partition: &Partition, target: &ObjectSet) -> Result<ApproximationResult> {
    let n = partition.universe_len();
    if let Some(bad) = target.ones().find(|&o| o >= n) {
        return Err(Error::ObjectOutOfRange(bad));
    }
    let mut normalized = FixedBitSet::with_capacity(n);
    normalized.extend(target.ones());
    let target = normalized;
    let mut lower = FixedBitSet::with_capacity(n);
    let mut upper = FixedBitSet::with_capacity(n);
    for block in partition.blocks() {
        let hits = block.iter().filter(|&&o| target.contains(o)).count();
        if hits == 0 {
            continue;
        }
        for &o in block {
            upper.insert(o);
            if hits == block.len() {
                lower.insert(o);
            }
        }
    }
    let mut boundary = upper.clone();
    boundary.difference_with(&lower);
    let accuracy = match upper.count_ones(..) {
        0 => Rational::from_integer(1),
        u => Rational::new(lower.count_ones(..) as u64, u as u64),
    };
    Ok(ApproximationResult {
        target,
        lower,
        upper,
        boundary,
        accuracy,
    })
}
