//! Brute-force oracles and fixture builders shared by the integration tests.
//! Everything here works from plain vectors and the textbook definitions so
//! that it shares no code paths with the library under test.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use fixedbitset::FixedBitSet;
use rand::Rng;
use roughfca::fca::FormalContext;
use roughfca::table::{AttributeSchema, Code, DecisionTable};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// The ten-patient table.
pub fn patients() -> DecisionTable {
    roughfca::table::load_table_inferred(data_dir().join("patients.csv")).unwrap()
}

/// A decision table from raw rows; the last column is the decision.
/// Domains are `1..=values` for conditions and `1..=classes` for the decision.
pub fn table_from_rows(rows: &[Vec<Code>], values: Code, classes: Code) -> DecisionTable {
    let width = rows[0].len();
    let mut schema: Vec<AttributeSchema> = (0..width - 1)
        .map(|a| AttributeSchema::condition(format!("c{a}"), (1..=values).collect()))
        .collect();
    schema.push(AttributeSchema::decision("d", (1..=classes).collect()));
    DecisionTable::new(
        (0..rows.len()).map(|i| format!("o{i}")).collect(),
        schema,
        rows.to_vec(),
    )
    .unwrap()
}

/// Random table with up to `max_objects` objects, `max_attrs` condition
/// attributes and `max_values` values per attribute, plus a decision with
/// up to three classes.
pub fn random_table<R: Rng>(rng: &mut R, max_objects: usize, max_attrs: usize, max_values: Code) -> DecisionTable {
    let n = rng.gen_range(1..=max_objects);
    let m = rng.gen_range(1..=max_attrs);
    let v = rng.gen_range(1..=max_values);
    let k = rng.gen_range(1..=3);
    let rows: Vec<Vec<Code>> = (0..n)
        .map(|_| {
            let mut r: Vec<Code> = (0..m).map(|_| rng.gen_range(1..=v)).collect();
            r.push(rng.gen_range(1..=k));
            r
        })
        .collect();
    table_from_rows(&rows, v, k)
}

pub fn random_incidence<R: Rng>(rng: &mut R, max_objects: usize, max_attrs: usize) -> Vec<Vec<bool>> {
    let n = rng.gen_range(0..=max_objects);
    let m = rng.gen_range(0..=max_attrs);
    let density: f64 = rng.gen_range(0.1..0.9);
    (0..n)
        .map(|_| (0..m).map(|_| rng.gen_bool(density)).collect())
        .collect()
}

pub fn context_from(incidence: &[Vec<bool>], m: usize) -> FormalContext {
    FormalContext::new(
        (0..incidence.len()).map(|i| format!("g{i}")).collect(),
        (0..m).map(|i| format!("m{i}")).collect(),
        incidence,
    )
    .unwrap()
}

pub fn width(incidence: &[Vec<bool>]) -> usize {
    incidence.first().map_or(0, Vec::len)
}

pub fn bits(width: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(width);
    s.extend(members);
    s
}

pub fn mask_members(mask: u32, width: usize) -> Vec<usize> {
    (0..width).filter(|&i| mask >> i & 1 == 1).collect()
}

// ---- rough sets ----------------------------------------------------------

/// `x ~ y` under `attrs`, straight from the definition.
pub fn indiscernible(t: &DecisionTable, attrs: &[usize], x: usize, y: usize) -> bool {
    attrs.iter().all(|&a| t.value(x, a) == t.value(y, a))
}

/// Partition as a set of blocks, each a sorted object list.
pub fn partition_oracle(t: &DecisionTable, attrs: &[usize]) -> BTreeSet<Vec<usize>> {
    (0..t.len())
        .map(|x| (0..t.len()).filter(|&y| indiscernible(t, attrs, x, y)).collect())
        .collect()
}

pub fn lower_oracle(t: &DecisionTable, attrs: &[usize], target: &[bool]) -> Vec<bool> {
    (0..t.len())
        .map(|x| (0..t.len()).all(|y| !indiscernible(t, attrs, x, y) || target[y]))
        .collect()
}

pub fn upper_oracle(t: &DecisionTable, attrs: &[usize], target: &[bool]) -> Vec<bool> {
    (0..t.len())
        .map(|x| (0..t.len()).any(|y| indiscernible(t, attrs, x, y) && target[y]))
        .collect()
}

/// Every minimal subset of `attrs` inducing the same partition, each sorted.
pub fn reducts_oracle(t: &DecisionTable, attrs: &[usize]) -> BTreeSet<Vec<usize>> {
    let full = partition_oracle(t, attrs);
    let preserving: Vec<Vec<usize>> = (0u32..1 << attrs.len())
        .map(|mask| {
            mask_members(mask, attrs.len())
                .into_iter()
                .map(|i| attrs[i])
                .collect::<Vec<_>>()
        })
        .filter(|sub| partition_oracle(t, sub) == full)
        .collect();
    preserving
        .iter()
        .filter(|s| {
            !preserving
                .iter()
                .any(|o| o.len() < s.len() && o.iter().all(|a| s.contains(a)))
        })
        .cloned()
        .collect()
}

// ---- rules ---------------------------------------------------------------

/// Premises `(column, value)` of every certain rule for `class`: for each
/// class member, the minimal subsets of its condition values that no object
/// of another class shares. Empty premises are left out.
pub fn rule_premises_oracle(t: &DecisionTable, class: Code) -> BTreeSet<Vec<(usize, Code)>> {
    let d = t.decision_attribute().unwrap();
    let conds = t.condition_attributes();
    let mut out = BTreeSet::new();
    for x in (0..t.len()).filter(|&x| t.value(x, d) == class) {
        let discerns = |mask: u32| {
            (0..t.len()).filter(|&y| t.value(y, d) != class).all(|y| {
                mask_members(mask, conds.len())
                    .iter()
                    .any(|&i| t.value(x, conds[i]) != t.value(y, conds[i]))
            })
        };
        let ok: Vec<u32> = (0u32..1 << conds.len()).filter(|&m| discerns(m)).collect();
        for &m in &ok {
            let minimal = !ok.iter().any(|&s| s != m && s & m == s);
            if minimal && m != 0 {
                out.insert(
                    mask_members(m, conds.len())
                        .into_iter()
                        .map(|i| (conds[i], t.value(x, conds[i])))
                        .collect(),
                );
            }
        }
    }
    out
}

// ---- formal contexts -----------------------------------------------------

pub fn intent_oracle(inc: &[Vec<bool>], m: usize, objects: &[usize]) -> Vec<usize> {
    (0..m).filter(|&a| objects.iter().all(|&g| inc[g][a])).collect()
}

pub fn extent_oracle(inc: &[Vec<bool>], attrs: &[usize]) -> Vec<usize> {
    (0..inc.len()).filter(|&g| attrs.iter().all(|&a| inc[g][a])).collect()
}

pub fn closure_oracle(inc: &[Vec<bool>], m: usize, attrs: &[usize]) -> Vec<usize> {
    intent_oracle(inc, m, &extent_oracle(inc, attrs))
}

/// All concepts as `(extent, intent)` index lists, found by closing every
/// attribute subset.
pub fn concepts_oracle(inc: &[Vec<bool>], m: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    (0u32..1 << m)
        .map(|mask| {
            let intent = closure_oracle(inc, m, &mask_members(mask, m));
            (extent_oracle(inc, &intent), intent)
        })
        .collect()
}
