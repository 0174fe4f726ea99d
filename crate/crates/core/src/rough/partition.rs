use std::collections::HashMap;

use serde::Serialize;

use crate::table::{Code, DecisionTable};

/// The family of indiscernibility classes `U/I(B)` for an attribute set `B`.
///
/// Blocks are listed in order of their first object, and objects inside a
/// block keep table order, so two partitions with the same blocks compare
/// equal regardless of which attributes produced them.
#[derive(Clone, Debug, Serialize)]
pub struct Partition {
    attributes: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.block_of == other.block_of
    }
}

impl Eq for Partition {}

impl Partition {
    /// Groups objects by their value tuple on `attributes`. Indices must be
    /// valid columns of `table`.
    pub fn new(table: &DecisionTable, attributes: &[usize]) -> Self {
        let mut ids: HashMap<Vec<Code>, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(table.len());
        let mut key = Vec::with_capacity(attributes.len());
        for o in 0..table.len() {
            key.clear();
            key.extend(attributes.iter().map(|&a| table.value(o, a)));
            let b = match ids.get(&key) {
                Some(&b) => b,
                None => {
                    ids.insert(key.clone(), blocks.len());
                    blocks.push(Vec::new());
                    blocks.len() - 1
                }
            };
            blocks[b].push(o);
            block_of.push(b);
        }
        Partition {
            attributes: attributes.to_vec(),
            blocks,
            block_of,
        }
    }

    pub fn attributes(&self) -> &[usize] {
        &self.attributes
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn universe_len(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, object: usize) -> usize {
        self.block_of[object]
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&o| coarser.block_of[o] == coarser.block_of[b[0]]))
    }

    /// Blocks as object-id lists.
    pub fn named_blocks<'t>(&self, table: &'t DecisionTable) -> Vec<Vec<&'t str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&o| table.object_id(o)).collect())
            .collect()
    }
}
