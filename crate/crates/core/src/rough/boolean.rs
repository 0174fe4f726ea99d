//! Prime implicants of monotone CNF formulas.
//!
//! A discernibility function is a conjunction of disjunctions of attributes.
//! Its prime implicants are the minimal attribute sets meeting every clause,
//! i.e. the minimal transversals of the clause family. They are found by
//! multiplying clauses out one at a time and absorbing supersets after each
//! step.

use fixedbitset::FixedBitSet;

/// Drops duplicate clauses and any clause that contains another.
pub(crate) fn absorb(mut sets: Vec<FixedBitSet>) -> Vec<FixedBitSet> {
    sets.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<FixedBitSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// Minimal sets hitting every clause, ordered by size then lexicographically
/// on members. `None` when some clause is empty (the formula is false).
pub(crate) fn minimal_transversals(clauses: &[FixedBitSet], width: usize) -> Option<Vec<FixedBitSet>> {
    if clauses.iter().any(|c| c.is_clear()) {
        return None;
    }
    let clauses = absorb(clauses.to_vec());
    let mut terms = vec![FixedBitSet::with_capacity(width)];
    for clause in &clauses {
        let mut next = Vec::with_capacity(terms.len());
        for t in &terms {
            if !t.is_disjoint(clause) {
                next.push(t.clone());
                continue;
            }
            for a in clause.ones() {
                let mut grown = t.clone();
                grown.insert(a);
                next.push(grown);
            }
        }
        terms = absorb(next);
    }
    terms.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    Some(terms)
}
