mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use roughfca::rules::{induce_rules, read_rules, validate_rules, write_rules, RuleValidation};
use roughfca::table::{Code, DecisionTable};
use roughfca::Rational;

fn table_strategy() -> impl Strategy<Value = DecisionTable> {
    (1usize..=10, 1usize..=4, 1u32..=3, 1u32..=3).prop_flat_map(|(n, m, v, k)| {
        let row = (proptest::collection::vec(1..=v, m), 1..=k).prop_map(|(mut r, d): (Vec<Code>, Code)| {
            r.push(d);
            r
        });
        proptest::collection::vec(row, n).prop_map(move |rows| table_from_rows(&rows, v, k))
    })
}

fn premises(t: &DecisionTable, class: Code) -> BTreeSet<Vec<(usize, Code)>> {
    induce_rules(t, class)
        .unwrap()
        .rules
        .iter()
        .map(|r| r.premise.iter().map(|d| (d.index, d.value)).collect())
        .collect()
}

fn has_members(t: &DecisionTable, class: Code) -> bool {
    let d = t.decision_attribute().unwrap();
    (0..t.len()).any(|o| t.value(o, d) == class)
}

fn fires(t: &DecisionTable, premise: &[(usize, Code)], o: usize) -> bool {
    premise.iter().all(|&(a, v)| t.value(o, a) == v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn induced_rules_match_the_oracle(t in table_strategy(), class in 1u32..=3) {
        prop_assume!(has_members(&t, class));
        prop_assert_eq!(premises(&t, class), rule_premises_oracle(&t, class));
    }

    #[test]
    fn induced_rules_are_certain_and_minimal(t in table_strategy(), class in 1u32..=3) {
        prop_assume!(has_members(&t, class));
        let d = t.decision_attribute().unwrap();
        for p in premises(&t, class) {
            prop_assert!(!p.is_empty());
            let hits: Vec<usize> = (0..t.len()).filter(|&o| fires(&t, &p, o)).collect();
            prop_assert!(!hits.is_empty());
            prop_assert!(hits.iter().all(|&o| t.value(o, d) == class));
            // Dropping any descriptor lets in some other class, for the
            // member whose row produced the rule.
            for skip in 0..p.len() {
                let shorter: Vec<_> = p.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                let still_certain = (0..t.len()).filter(|&o| fires(&t, &shorter, o)).all(|o| t.value(o, d) == class);
                prop_assert!(!still_certain || premises(&t, class).iter().any(|q| q != &p && q.iter().all(|x| shorter.contains(x))));
            }
        }
    }

    #[test]
    fn validation_counts_add_up(t in table_strategy(), class in 1u32..=3, pct in 0u64..=100) {
        prop_assume!(has_members(&t, class));
        let rules = induce_rules(&t, class).unwrap().rules;
        prop_assume!(!rules.is_empty());
        let threshold = Rational::new(pct, 100);
        let report = validate_rules(&rules, &t, threshold).unwrap();
        for (rule, v) in rules.iter().zip(&report.rules) {
            // On its own training table a certain rule never contradicts.
            prop_assert_eq!(v.non_supported, 0);
            prop_assert_eq!(v.supported, rule.metrics.support);
            prop_assert!(v.kept());
        }
    }

    #[test]
    fn verdict_follows_threshold(s in 0usize..50, c in 0usize..50, num in 0u64..=20) {
        let threshold = Rational::new(num, 20);
        let v = RuleValidation::from_counts("r", s, c, threshold);
        if s + c == 0 {
            prop_assert!(v.accuracy.is_none() && !v.kept());
        } else {
            let acc = Rational::new(s as u64, (s + c) as u64);
            prop_assert_eq!(v.accuracy, Some(acc));
            prop_assert_eq!(v.kept(), acc >= threshold);
            prop_assert!(v.percent().unwrap() * (s + c) as u64 <= 100 * s as u64);
        }
    }

    #[test]
    fn rules_round_trip_through_json_lines(t in table_strategy(), class in 1u32..=3) {
        prop_assume!(has_members(&t, class));
        let rules = induce_rules(&t, class).unwrap().rules;
        let mut buf = Vec::new();
        write_rules(&rules, &mut buf).unwrap();
        prop_assert_eq!(read_rules(buf.as_slice()).unwrap(), rules);
    }
}
