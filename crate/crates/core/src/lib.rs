//! Two-stage rule mining over decision tables.
//!
//! The first stage induces certain decision rules from a training table with
//! rough-set reasoning and keeps those that hold up on a test table. The
//! second stage treats the surviving rules of one decision class as objects
//! of a formal context and derives its concept lattice, canonical
//! implication basis and a frequency ranking of descriptors.

pub mod error;
pub mod fca;
pub mod pipeline;
pub mod rough;
pub mod rules;
pub mod table;

pub use error::{Error, Result};

/// Exact non-negative rational used for accuracies and strengths.
pub type Rational = num_rational::Ratio<u64>;
