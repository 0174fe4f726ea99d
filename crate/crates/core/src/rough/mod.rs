//! Indiscernibility, approximations, dispensability, reducts and core.

mod approx;
pub(crate) mod boolean;
mod partition;
mod reduct;

pub use approx::{approximate, is_definable, ApproximationResult};
pub use partition::Partition;
pub use reduct::{
    is_dispensable, positive_region, reducts_and_core, reducts_with, relative_reducts, relative_reducts_with,
    ReductOptions, ReductSet, ReductStrategy, EXHAUSTIVE_HARD_CAP,
};

use crate::error::Result;
use crate::table::DecisionTable;

/// `U/I(B)` for the named attributes.
pub fn indiscernibility_partition<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Partition> {
    let idx = table.attribute_indices(attrs)?;
    Ok(Partition::new(table, &idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::table::fixtures::medical;
    use crate::table::AttributeSchema;
    use crate::Rational;

    const SYMPTOMS: [&str; 4] = ["a1", "a2", "a3", "a6"];
    const CONDITIONS: [&str; 6] = ["a1", "a2", "a3", "a4", "a5", "a6"];

    fn blocks(t: &DecisionTable, p: &Partition) -> Vec<Vec<String>> {
        p.named_blocks(t)
            .into_iter()
            .map(|b| b.into_iter().map(String::from).collect())
            .collect()
    }

    fn strs(xs: &[&[&str]]) -> Vec<Vec<String>> {
        xs.iter().map(|b| b.iter().map(|s| s.to_string()).collect()).collect()
    }

    /// Independent check: objects equivalent iff equal on every attribute.
    fn same_relation(t: &DecisionTable, a: &[usize], b: &[usize]) -> bool {
        (0..t.len()).all(|x| {
            (0..t.len()).all(|y| {
                let ea = a.iter().all(|&k| t.value(x, k) == t.value(y, k));
                let eb = b.iter().all(|&k| t.value(x, k) == t.value(y, k));
                ea == eb
            })
        })
    }

    #[test]
    fn symptom_partition() {
        let t = medical();
        let p = indiscernibility_partition(&t, &SYMPTOMS).unwrap();
        assert_eq!(
            blocks(&t, &p),
            strs(&[
                &["p1", "p4"],
                &["p2", "p8"],
                &["p3", "p5"],
                &["p6"],
                &["p7"],
                &["p9"],
                &["p10"]
            ])
        );
    }

    #[test]
    fn empty_and_single_attribute_partitions() {
        let t = medical();
        let p = indiscernibility_partition::<&str>(&t, &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.blocks()[0].len(), 10);
        let p = indiscernibility_partition(&t, &["a5"]).unwrap();
        assert_eq!(
            blocks(&t, &p),
            strs(&[&["p1", "p5", "p9", "p10"], &["p2", "p4", "p6", "p7"], &["p3", "p8"]])
        );
        assert!(matches!(
            indiscernibility_partition(&t, &["a9"]),
            Err(Error::UnknownAttribute(_))
        ));
    }

    #[test]
    fn fever_approximation() {
        let t = medical();
        let p = indiscernibility_partition(&t, &SYMPTOMS).unwrap();
        let x = t.object_set(&["p1", "p6", "p9", "p10"]).unwrap();
        let r = approximate(&p, &x).unwrap();
        assert_eq!(t.object_ids(&r.lower), vec!["p6", "p9", "p10"]);
        assert_eq!(t.object_ids(&r.upper), vec!["p1", "p4", "p6", "p9", "p10"]);
        assert_eq!(t.object_ids(&r.boundary), vec!["p1", "p4"]);
        assert_eq!(r.accuracy, Rational::new(3, 5));
        assert!(!is_definable(&r));
    }

    #[test]
    fn universe_single_object_and_block() {
        let t = medical();
        let p = indiscernibility_partition(&t, &SYMPTOMS).unwrap();

        let all = approximate(&p, &t.universe()).unwrap();
        assert_eq!(all.lower, t.universe());
        assert_eq!(all.upper, t.universe());
        assert!(all.boundary.is_clear());
        assert_eq!(all.accuracy, Rational::from_integer(1));
        assert!(all.is_definable());

        let one = approximate(&p, &t.object_set(&["p2"]).unwrap()).unwrap();
        assert!(one.lower.is_clear());
        assert_eq!(t.object_ids(&one.upper), vec!["p2", "p8"]);
        assert_eq!(one.accuracy, Rational::from_integer(0));

        let block = approximate(&p, &t.object_set(&["p3", "p5"]).unwrap()).unwrap();
        assert!(block.is_definable());

        let empty = approximate(&p, &fixedbitset::FixedBitSet::with_capacity(10)).unwrap();
        assert_eq!(empty.accuracy, Rational::from_integer(1));
    }

    #[test]
    fn unknown_target_object() {
        let t = medical();
        let p = indiscernibility_partition(&t, &SYMPTOMS).unwrap();
        let mut x = fixedbitset::FixedBitSet::with_capacity(12);
        x.insert(11);
        assert!(matches!(approximate(&p, &x), Err(Error::ObjectOutOfRange(11))));
        assert!(matches!(t.object_set(&["p11"]), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn dispensability() {
        let t = medical();
        assert!(is_dispensable(&t, &CONDITIONS, "a6").unwrap());
        assert!(!is_dispensable(&t, &["a5"], "a5").unwrap());
        let expected = same_relation(&t, &[0, 4], &[4]);
        assert!(!expected);
        assert_eq!(is_dispensable(&t, &["a1", "a5"], "a1").unwrap(), expected);
        assert!(matches!(is_dispensable(&t, &["a5"], "a1"), Err(Error::NotInSet(_))));
    }

    /// Brute force over all 64 subsets with a pairwise relation check.
    #[test]
    fn condition_reducts_against_brute_force() {
        let t = medical();
        let p: Vec<usize> = (0..6).collect();
        let preserves: Vec<u32> = (0..64u32)
            .filter(|&m| {
                let sub: Vec<usize> = (0..6).filter(|i| m >> i & 1 == 1).collect();
                same_relation(&t, &sub, &p)
            })
            .collect();
        let minimal: Vec<u32> = preserves
            .iter()
            .copied()
            .filter(|&m| !preserves.iter().any(|&o| o != m && o & m == o))
            .collect();
        let mut brute: Vec<Vec<usize>> = minimal
            .iter()
            .map(|&m| (0..6).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        brute.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let exhaustive = reducts_with(&t, &CONDITIONS, ReductOptions::exhaustive()).unwrap();
        let matrix = reducts_with(&t, &CONDITIONS, ReductOptions::matrix()).unwrap();
        assert_eq!(exhaustive.reducts, brute);
        assert_eq!(matrix, exhaustive);
        assert!(exhaustive.reducts.iter().all(|r| !r.contains(&5)));

        let core: Vec<usize> = (0..6).filter(|a| brute.iter().all(|r| r.contains(a))).collect();
        assert_eq!(exhaustive.core, core);
        let indispensable: Vec<usize> = (0..6)
            .filter(|&a| !is_dispensable(&t, &CONDITIONS, &format!("a{}", a + 1)).unwrap())
            .collect();
        assert_eq!(exhaustive.core, indispensable);
    }

    #[test]
    fn independent_set_is_its_own_reduct() {
        let schema = vec![
            AttributeSchema::condition("a", vec![0, 1]),
            AttributeSchema::condition("b", vec![0, 1]),
        ];
        let t = DecisionTable::new(
            vec!["x".into(), "y".into(), "z".into()],
            schema,
            vec![vec![0, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let r = reducts_and_core(&t, &["a", "b"]).unwrap();
        assert_eq!(r.reducts, vec![vec![0, 1]]);
        assert_eq!(r.core, vec![0, 1]);
    }

    #[test]
    fn constant_attribute_reduces_to_nothing() {
        let t = medical();
        let r = reducts_and_core(&t, &["a6"]).unwrap();
        assert_eq!(r.reducts, vec![Vec::<usize>::new()]);
        assert!(r.core.is_empty());
        assert_eq!(r, reducts_with(&t, &["a6"], ReductOptions::matrix()).unwrap());
    }

    #[test]
    fn reduct_errors() {
        let t = medical();
        assert!(matches!(
            reducts_and_core::<&str>(&t, &[]),
            Err(Error::EmptyAttributeSet)
        ));
        let schema: Vec<_> = (0..21)
            .map(|i| AttributeSchema::condition(format!("c{i}"), vec![0]))
            .collect();
        let names: Vec<String> = schema.iter().map(|a| a.name.clone()).collect();
        let wide = DecisionTable::new(vec!["o".into()], schema, vec![vec![0; 21]]).unwrap();
        assert!(matches!(
            reducts_with(&wide, &names, ReductOptions::exhaustive()),
            Err(Error::ReductCapExceeded { count: 21, .. })
        ));
        // Above the cap, the automatic strategy switches to the matrix.
        assert_eq!(
            reducts_and_core(&wide, &names).unwrap().reducts,
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn relative_reducts_agree() {
        let t = medical();
        let ex = relative_reducts_with(&t, &CONDITIONS, ReductOptions::exhaustive()).unwrap();
        let mx = relative_reducts_with(&t, &CONDITIONS, ReductOptions::matrix()).unwrap();
        assert_eq!(ex, mx);
        let full = positive_region(&t, &[0, 1, 2, 3, 4, 5], &[6]);
        assert_eq!(full, t.universe());
        for r in &ex.reducts {
            assert_eq!(positive_region(&t, r, &[6]), full);
        }
    }
}
