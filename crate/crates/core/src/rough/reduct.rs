//! Dispensability, reducts and core.

use fixedbitset::FixedBitSet;

use super::{boolean, Partition};
use crate::error::{Error, Result};
use crate::table::DecisionTable;

/// Attribute counts above this are refused for forced exhaustive search.
pub const EXHAUSTIVE_HARD_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReductStrategy {
    /// Exhaustive up to `exhaustive_cap` attributes, discernibility matrix above.
    #[default]
    Auto,
    Exhaustive,
    DiscernibilityMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductOptions {
    pub strategy: ReductStrategy,
    pub exhaustive_cap: usize,
}

impl Default for ReductOptions {
    fn default() -> Self {
        ReductOptions {
            strategy: ReductStrategy::Auto,
            exhaustive_cap: 12,
        }
    }
}

impl ReductOptions {
    pub fn exhaustive() -> Self {
        ReductOptions {
            strategy: ReductStrategy::Exhaustive,
            ..Self::default()
        }
    }

    pub fn matrix() -> Self {
        ReductOptions {
            strategy: ReductStrategy::DiscernibilityMatrix,
            ..Self::default()
        }
    }
}

/// All reducts of an attribute set and their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductSet {
    /// Column indices, each reduct sorted ascending; reducts ordered by size
    /// then lexicographically.
    pub reducts: Vec<Vec<usize>>,
    pub core: Vec<usize>,
}

impl ReductSet {
    fn from_reducts(mut reducts: Vec<Vec<usize>>) -> Self {
        reducts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let core = match reducts.split_first() {
            None => Vec::new(),
            Some((first, rest)) => first
                .iter()
                .copied()
                .filter(|a| rest.iter().all(|r| r.contains(a)))
                .collect(),
        };
        ReductSet { reducts, core }
    }

    pub fn named<'t>(&self, table: &'t DecisionTable) -> Vec<Vec<&'t str>> {
        self.reducts
            .iter()
            .map(|r| r.iter().map(|&a| table.attribute(a).name.as_str()).collect())
            .collect()
    }

    pub fn core_names<'t>(&self, table: &'t DecisionTable) -> Vec<&'t str> {
        self.core.iter().map(|&a| table.attribute(a).name.as_str()).collect()
    }
}

/// `a` is dispensable in `P` when `I(P) = I(P - {a})`.
pub fn is_dispensable<S: AsRef<str>>(table: &DecisionTable, attrs: &[S], a: &str) -> Result<bool> {
    let p = table.attribute_indices(attrs)?;
    let idx = table.attribute_index(a)?;
    if !p.contains(&idx) {
        return Err(Error::NotInSet(a.to_string()));
    }
    let without: Vec<usize> = p.iter().copied().filter(|&x| x != idx).collect();
    Ok(Partition::new(table, &p) == Partition::new(table, &without))
}

pub fn reducts_and_core<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<ReductSet> {
    reducts_with(table, attrs, ReductOptions::default())
}

/// Minimal subsets `P'` of `attrs` with `I(P') = I(P)`.
pub fn reducts_with<S: AsRef<str>>(table: &DecisionTable, attrs: &[S], opts: ReductOptions) -> Result<ReductSet> {
    let p = resolve(table, attrs)?;
    let full = Partition::new(table, &p);
    let reducts = if use_exhaustive(p.len(), opts)? {
        exhaustive(&p, |sub| Partition::new(table, sub) == full)
    } else {
        let clauses = pairwise_clauses(table, &p, |x, y| full.block_of(x) != full.block_of(y));
        from_matrix(&p, &clauses)
    };
    Ok(ReductSet::from_reducts(reducts))
}

/// Objects whose `attrs`-class lies wholly inside one decision class.
pub fn positive_region(table: &DecisionTable, attrs: &[usize], decision: &[usize]) -> FixedBitSet {
    let by_attrs = Partition::new(table, attrs);
    let by_decision = Partition::new(table, decision);
    let mut pos = FixedBitSet::with_capacity(table.len());
    for block in by_attrs.blocks() {
        let d = by_decision.block_of(block[0]);
        if block.iter().all(|&o| by_decision.block_of(o) == d) {
            pos.extend(block.iter().copied());
        }
    }
    pos
}

/// Decision-relative reducts: minimal `P' ⊆ P` preserving the positive
/// region of the table's decision attributes.
pub fn relative_reducts_with<S: AsRef<str>>(
    table: &DecisionTable,
    attrs: &[S],
    opts: ReductOptions,
) -> Result<ReductSet> {
    let p = resolve(table, attrs)?;
    let decision = table.decision_attributes();
    let pos = positive_region(table, &p, &decision);
    let reducts = if use_exhaustive(p.len(), opts)? {
        exhaustive(&p, |sub| positive_region(table, sub, &decision) == pos)
    } else {
        let by_decision = Partition::new(table, &decision);
        let clauses = pairwise_clauses(table, &p, |x, y| {
            by_decision.block_of(x) != by_decision.block_of(y) && (pos.contains(x) || pos.contains(y))
        });
        from_matrix(&p, &clauses)
    };
    Ok(ReductSet::from_reducts(reducts))
}

pub fn relative_reducts<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<ReductSet> {
    relative_reducts_with(table, attrs, ReductOptions::default())
}

fn resolve<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Vec<usize>> {
    if attrs.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    let mut p = table.attribute_indices(attrs)?;
    p.sort_unstable();
    p.dedup();
    Ok(p)
}

fn use_exhaustive(n: usize, opts: ReductOptions) -> Result<bool> {
    match opts.strategy {
        ReductStrategy::Exhaustive if n > EXHAUSTIVE_HARD_CAP => Err(Error::ReductCapExceeded {
            count: n,
            cap: EXHAUSTIVE_HARD_CAP,
        }),
        ReductStrategy::Exhaustive => Ok(true),
        ReductStrategy::DiscernibilityMatrix => Ok(false),
        ReductStrategy::Auto => Ok(n <= opts.exhaustive_cap.min(EXHAUSTIVE_HARD_CAP)),
    }
}

/// Subsets in order of size; a subset is minimal iff no earlier hit is
/// contained in it, since `preserves` is monotone in the subset.
fn exhaustive(p: &[usize], preserves: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut hits: Vec<u32> = Vec::new();
    let mut sub = Vec::with_capacity(n);
    for m in masks {
        if hits.iter().any(|&h| h & !m == 0) {
            continue;
        }
        sub.clear();
        sub.extend((0..n).filter(|i| m >> i & 1 == 1).map(|i| p[i]));
        if preserves(&sub) {
            hits.push(m);
        }
    }
    hits.iter()
        .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| p[i]).collect())
        .collect()
}

/// One clause per object pair selected by `needs`: the positions in `p`
/// where the two rows differ.
fn pairwise_clauses(table: &DecisionTable, p: &[usize], needs: impl Fn(usize, usize) -> bool) -> Vec<FixedBitSet> {
    let mut clauses = Vec::new();
    for x in 0..table.len() {
        for y in x + 1..table.len() {
            if !needs(x, y) {
                continue;
            }
            let mut c = FixedBitSet::with_capacity(p.len());
            for (i, &a) in p.iter().enumerate() {
                if table.value(x, a) != table.value(y, a) {
                    c.insert(i);
                }
            }
            clauses.push(c);
        }
    }
    clauses
}

fn from_matrix(p: &[usize], clauses: &[FixedBitSet]) -> Vec<Vec<usize>> {
    // Empty clauses pair objects that `P` itself cannot tell apart; they
    // constrain nothing.
    let clauses: Vec<FixedBitSet> = clauses.iter().filter(|c| !c.is_clear()).cloned().collect();
    boolean::minimal_transversals(&clauses, p.len())
        .unwrap_or_default()
        .into_iter()
        .map(|t| t.ones().map(|i| p[i]).collect())
        .collect()
}
