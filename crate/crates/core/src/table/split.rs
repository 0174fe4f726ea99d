use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::DecisionTable;
use crate::error::{Error, Result};

/// Uniform random split without replacement. The training side holds
/// `round(ratio * |U|)` objects; both sides keep the input row order.
pub fn split_train_test(table: &DecisionTable, ratio: f64, seed: u64) -> Result<(DecisionTable, DecisionTable)> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidRatio(ratio));
    }
    if table.is_empty() {
        return Err(Error::NoObjects);
    }
    let n = table.len();
    let n_train = (ratio * n as f64).round() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut train = order[..n_train].to_vec();
    let mut test = order[n_train..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok((table.select(&train), table.select(&test)))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::table::fixtures::medical;
    use crate::table::AttributeSchema;

    fn ids(t: &DecisionTable) -> BTreeSet<String> {
        t.objects().iter().cloned().collect()
    }

    #[test]
    fn sizes_follow_rounding() {
        let schema = vec![AttributeSchema::condition("a", vec![0])];
        let big = DecisionTable::new((0..556).map(|i| format!("o{i}")).collect(), schema, vec![vec![0]; 556]).unwrap();
        let (train, test) = split_train_test(&big, 0.55, 7).unwrap();
        assert_eq!((train.len(), test.len()), (306, 250));
    }

    #[test]
    fn deterministic_per_seed() {
        let t = medical();
        let a = split_train_test(&t, 0.5, 42).unwrap();
        let b = split_train_test(&t, 0.5, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_give_disjoint_covers() {
        let t = medical();
        let all = ids(&t);
        let mut distinct = BTreeSet::new();
        for seed in 0..20 {
            let (train, test) = split_train_test(&t, 0.5, seed).unwrap();
            let (a, b) = (ids(&train), ids(&test));
            assert!(a.is_disjoint(&b));
            assert_eq!(a.union(&b).cloned().collect::<BTreeSet<_>>(), all);
            assert_eq!(a.len(), 5);
            distinct.insert(a.into_iter().collect::<Vec<_>>());
        }
        assert!(distinct.len() > 1);
    }

    #[test]
    fn ratio_bounds() {
        let t = medical();
        for r in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(split_train_test(&t, r, 0), Err(Error::InvalidRatio(_))));
        }
    }
}
