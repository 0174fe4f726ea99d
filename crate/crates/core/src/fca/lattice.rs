use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::concepts::FormalConcept;
use super::context::FormalContext;
use crate::error::{Error, Result};

/// Concepts ordered by extent inclusion, with the covering relation
/// precomputed in both directions.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<FormalConcept>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    by_extent: HashMap<FixedBitSet, usize>,
    by_intent: HashMap<FixedBitSet, usize>,
    top: usize,
    bottom: usize,
}

/// Builds the lattice over `concepts`, which must be closed in `ctx`,
/// pairwise distinct, and include the top and bottom concepts.
pub fn build_lattice(ctx: &FormalContext, concepts: Vec<FormalConcept>) -> Result<ConceptLattice> {
    let mut by_extent = HashMap::with_capacity(concepts.len());
    let mut by_intent = HashMap::with_capacity(concepts.len());
    for (i, c) in concepts.iter().enumerate() {
        if c.extent.len() != ctx.n_objects() || c.intent.len() != ctx.n_attributes() || !c.is_closed_in(ctx) {
            return Err(Error::NotClosed);
        }
        if by_extent.insert(c.extent.clone(), i).is_some() {
            return Err(Error::DuplicateConcept);
        }
        by_intent.insert(c.intent.clone(), i);
    }
    let top = *by_extent.get(&ctx.all_objects()).ok_or(Error::MissingConcept("top"))?;
    let bottom = *by_intent
        .get(&ctx.all_attributes())
        .ok_or(Error::MissingConcept("bottom"))?;

    // Visiting candidates by growing extent, j covers i unless some cover
    // already found lies below j.
    let mut order: Vec<usize> = (0..concepts.len()).collect();
    order.sort_by_key(|&i| concepts[i].extent.count_ones(..));
    let mut upper = vec![Vec::new(); concepts.len()];
    let mut lower = vec![Vec::new(); concepts.len()];
    for i in 0..concepts.len() {
        let ext = &concepts[i].extent;
        let mut covers: Vec<usize> = Vec::new();
        for &j in &order {
            let other = &concepts[j].extent;
            if j == i || !ext.is_subset(other) || other.is_subset(ext) {
                continue;
            }
            if covers.iter().all(|&k| !concepts[k].extent.is_subset(other)) {
                covers.push(j);
            }
        }
        covers.sort_unstable();
        for &j in &covers {
            lower[j].push(i);
        }
        upper[i] = covers;
    }
    Ok(ConceptLattice {
        context: ctx.clone(),
        concepts,
        upper,
        lower,
        by_extent,
        by_intent,
        top,
        bottom,
    })
}

impl ConceptLattice {
    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concept(&self, i: usize) -> &FormalConcept {
        &self.concepts[i]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// `i ≤ j` in the concept order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset(&self.concepts[j].extent)
    }

    /// Concepts directly above `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// Concepts directly below `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .upper
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .collect();
        e.sort_unstable();
        e
    }

    /// Greatest lower bound: the concept whose extent is the intersection.
    /// `None` only when the lattice was built from an incomplete concept set.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let mut ext = self.concepts[i].extent.clone();
        ext.intersect_with(&self.concepts[j].extent);
        self.by_extent.get(&ext).copied()
    }

    /// Least upper bound: the concept whose intent is the intersection.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let mut int = self.concepts[i].intent.clone();
        int.intersect_with(&self.concepts[j].intent);
        self.by_intent.get(&int).copied()
    }

    pub fn find_by_extent(&self, extent: &FixedBitSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn find_by_intent(&self, intent: &FixedBitSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    /// Attributes introduced at concept `i`: those whose attribute concept
    /// it is.
    pub fn own_attributes(&self, i: usize) -> Vec<usize> {
        let ext = &self.concepts[i].extent;
        (0..self.context.n_attributes())
            .filter(|&m| self.context.column(m) == ext)
            .collect()
    }

    /// Objects introduced at concept `i`.
    pub fn own_objects(&self, i: usize) -> Vec<usize> {
        let int = &self.concepts[i].intent;
        (0..self.context.n_objects())
            .filter(|&g| self.context.row(g) == int)
            .collect()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz source for the Hasse diagram. Each node shows only the
/// attributes and objects it introduces; edges run from lower to upper
/// concept and are drawn bottom-up.
pub fn export_dot(lattice: &ConceptLattice) -> String {
    let ctx = lattice.context();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for i in 0..lattice.len() {
        let attrs: Vec<String> = lattice
            .own_attributes(i)
            .into_iter()
            .map(|m| escape(&ctx.attributes()[m]))
            .collect();
        let objs: Vec<String> = lattice
            .own_objects(i)
            .into_iter()
            .map(|g| escape(&ctx.objects()[g]))
            .collect();
        let label = match (attrs.is_empty(), objs.is_empty()) {
            (true, true) => String::new(),
            (false, true) => attrs.join(", "),
            (true, false) => objs.join(", "),
            (false, false) => format!("{}\\n{}", attrs.join(", "), objs.join(", ")),
        };
        let _ = writeln!(out, "  c{i} [label=\"{label}\"];");
    }
    for (i, j) in lattice.edges() {
        let _ = writeln!(out, "  c{i} -> c{j};");
    }
    out.push_str("}\n");
    out
}
