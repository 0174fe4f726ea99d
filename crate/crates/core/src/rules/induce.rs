use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{DecisionRule, Descriptor, RuleFilter, RuleMetrics};
use crate::error::{Error, Result};
use crate::rough::boolean::minimal_transversals;
use crate::table::{Code, DecisionTable};
use crate::Rational;

/// Outcome of reducing one object's condition row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectReducts {
    /// Minimal descriptor sets of the row that tell the object apart from
    /// every object with another decision.
    Certain(Vec<Vec<Descriptor>>),
    /// Objects with the same condition values but a different decision.
    Conflict { with: Vec<String> },
}

/// Rules induced for one decision class, before filtering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induction {
    pub class: Code,
    pub members: usize,
    pub rules: Vec<DecisionRule>,
    /// Class members with no certain rule.
    pub conflicts: Vec<String>,
}

pub fn object_value_reducts(train: &DecisionTable, object: &str) -> Result<ObjectReducts> {
    let d = train.decision_attribute()?;
    let o = train.object_index(object)?;
    Ok(reducts_of(train, o, d, &train.condition_attributes()))
}

fn reducts_of(train: &DecisionTable, o: usize, d: usize, conds: &[usize]) -> ObjectReducts {
    let class = train.value(o, d);
    let mut clauses = Vec::new();
    let mut conflicts = Vec::new();
    for y in 0..train.len() {
        if train.value(y, d) == class {
            continue;
        }
        let mut clause = FixedBitSet::with_capacity(conds.len());
        for (i, &a) in conds.iter().enumerate() {
            if train.value(o, a) != train.value(y, a) {
                clause.insert(i);
            }
        }
        if clause.is_clear() {
            conflicts.push(train.object_id(y).to_string());
        }
        clauses.push(clause);
    }
    if !conflicts.is_empty() {
        return ObjectReducts::Conflict { with: conflicts };
    }
    let terms = minimal_transversals(&clauses, conds.len()).unwrap_or_default();
    ObjectReducts::Certain(
        terms
            .into_iter()
            .map(|t| {
                t.ones()
                    .map(|i| Descriptor::of(train, conds[i], train.value(o, conds[i])))
                    .collect()
            })
            .collect(),
    )
}

/// Every certain rule for `class`: the union of its members' value reducts
/// with identical premises merged. Rules are sorted by premise and numbered
/// `R<i>_<class>` in that order.
///
/// A member whose reduct is empty (no object of another class exists) adds
/// no rule, since a premise must name at least one descriptor.
pub fn induce_rules(train: &DecisionTable, class: Code) -> Result<Induction> {
    let d = train.decision_attribute()?;
    if !train.attribute(d).contains(class) {
        return Err(Error::UnknownClass(class));
    }
    let members: Vec<usize> = (0..train.len()).filter(|&o| train.value(o, d) == class).collect();
    if members.is_empty() {
        return Err(Error::EmptyClass(class));
    }
    let conds = train.condition_attributes();
    let per_object: Vec<ObjectReducts> = members.par_iter().map(|&o| reducts_of(train, o, d, &conds)).collect();

    let mut premises: BTreeSet<Vec<Descriptor>> = BTreeSet::new();
    let mut conflicts = Vec::new();
    for (&o, reducts) in members.iter().zip(per_object) {
        match reducts {
            ObjectReducts::Certain(rs) => premises.extend(rs.into_iter().filter(|p| !p.is_empty())),
            ObjectReducts::Conflict { .. } => conflicts.push(train.object_id(o).to_string()),
        }
    }
    let conclusion = Descriptor::of(train, d, class);
    let rules = premises
        .into_iter()
        .enumerate()
        .map(|(i, p)| finish_rule(train, format!("R{}_{}", i + 1, class), p, conclusion.clone()))
        .collect();
    Ok(Induction {
        class,
        members: members.len(),
        rules,
        conflicts,
    })
}

/// Induction followed by the filter.
pub fn generate_candidate_rules(train: &DecisionTable, class: Code, filter: &RuleFilter) -> Result<Vec<DecisionRule>> {
    Ok(filter.apply(induce_rules(train, class)?.rules))
}

pub(crate) fn finish_rule(
    table: &DecisionTable,
    id: String,
    premise: Vec<Descriptor>,
    conclusion: Descriptor,
) -> DecisionRule {
    let fires = |o: usize| premise.iter().all(|p| table.value(o, p.index) == p.value);
    let in_class = |o: usize| table.value(o, conclusion.index) == conclusion.value;
    let support: Vec<usize> = (0..table.len()).filter(|&o| fires(o) && in_class(o)).collect();
    let class_size = (0..table.len()).filter(|&o| in_class(o)).count();
    let ratio = |n: usize, d: usize| {
        if d == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new(n as u64, d as u64)
        }
    };
    DecisionRule {
        id,
        metrics: RuleMetrics {
            support: support.len(),
            strength: ratio(support.len(), table.len()),
            class_strength: ratio(support.len(), class_size),
            accuracy: None,
        },
        support: support.iter().map(|&o| table.object_id(o).to_string()).collect(),
        premise,
        conclusion,
    }
}
