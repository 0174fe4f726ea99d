//! Formal concept analysis over rule sets.
//!
//! Rules of one decision class become the objects of a [`FormalContext`]
//! whose attributes are the premise descriptors. From there the module
//! enumerates concepts with NextClosure, orders them into a
//! [`ConceptLattice`], derives the canonical implication basis and ranks
//! descriptors by how often implication premises lead to them.

mod chief;
mod concepts;
mod context;
mod implications;
mod lattice;

pub use chief::{chief_factors, render_chief_factors, ChiefFactor, ChiefFactorReport, COUNTING_NOTE};
pub use concepts::{enumerate_concepts, next_closure, FormalConcept};
pub use context::{rules_to_context, AttributeSet, FormalContext};
pub use implications::{
    closure_under, implication_basis, parse_implications, render_implications, Implication, ParsedImplications,
};
pub use lattice::{build_lattice, export_dot, ConceptLattice};

use std::path::Path;

use crate::error::{Error, Result};

pub fn load_cxt(path: impl AsRef<Path>) -> Result<FormalContext> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    FormalContext::from_cxt(&text)
}

pub fn save_cxt(ctx: &FormalContext, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, ctx.to_cxt()).map_err(|e| Error::io(path, e))
}
