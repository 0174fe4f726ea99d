//! Decision tables: a finite universe of objects described by condition and
//! decision attributes with discrete integer codes.
//!
//! Codes are opaque. Only equality between codes matters to the rest of the
//! crate, so the numeric assignment of an attribute's values is arbitrary.

mod discretize;
mod io;
mod split;

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use discretize::{discretize, Bin, BinSpec, DiscretizationSpec, RawTable};
pub use io::{load_schema, load_table, load_table_inferred, parse_schema, read_table, save_table, write_table};
pub use split::split_train_test;

/// A discrete attribute value.
pub type Code = u32;

/// Set of object indices into a table's universe.
pub type ObjectSet = FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Condition,
    Decision,
}

impl AttributeKind {
    pub fn symbol(self) -> &'static str {
        match self {
            AttributeKind::Condition => "C",
            AttributeKind::Decision => "D",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s.trim() {
            "C" | "c" | "condition" => Some(AttributeKind::Condition),
            "D" | "d" | "decision" => Some(AttributeKind::Decision),
            _ => None,
        }
    }
}

/// Name, role and admissible codes of one column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeSchema {
    pub name: String,
    pub kind: AttributeKind,
    pub domain: Vec<Code>,
    /// Optional human labels, parallel to `domain`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AttributeSchema {
    pub fn new(name: impl Into<String>, kind: AttributeKind, domain: Vec<Code>) -> Self {
        AttributeSchema {
            name: name.into(),
            kind,
            domain,
            labels: None,
        }
    }

    pub fn condition(name: impl Into<String>, domain: Vec<Code>) -> Self {
        Self::new(name, AttributeKind::Condition, domain)
    }

    pub fn decision(name: impl Into<String>, domain: Vec<Code>) -> Self {
        Self::new(name, AttributeKind::Decision, domain)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn contains(&self, code: Code) -> bool {
        self.domain.contains(&code)
    }

    pub fn label(&self, code: Code) -> Option<&str> {
        let labels = self.labels.as_ref()?;
        let pos = self.domain.iter().position(|&c| c == code)?;
        labels.get(pos).map(String::as_str)
    }

    fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::Schema("attribute name is empty".into()));
        }
        if self.domain.is_empty() {
            return Err(Error::Schema(format!("attribute `{}` has an empty domain", self.name)));
        }
        let distinct: HashSet<_> = self.domain.iter().collect();
        if distinct.len() != self.domain.len() {
            return Err(Error::Schema(format!(
                "attribute `{}` repeats a domain code",
                self.name
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.domain.len() {
                return Err(Error::Schema(format!(
                    "attribute `{}` has {} labels for {} codes",
                    self.name,
                    labels.len(),
                    self.domain.len()
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn validate_schema(schema: &[AttributeSchema]) -> Result<()> {
    let mut seen = HashSet::new();
    for attr in schema {
        attr.validate()?;
        if !seen.insert(attr.name.as_str()) {
            return Err(Error::Schema(format!("duplicate attribute name `{}`", attr.name)));
        }
    }
    Ok(())
}

/// An information system `(U, C ∪ D, V, f)` with a total value function.
///
/// Values are stored row-major; every cell is checked against its column's
/// domain on construction, so a `DecisionTable` in hand is always total and
/// well-typed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTable {
    objects: Vec<String>,
    schema: Vec<AttributeSchema>,
    values: Vec<Code>,
    index: HashMap<String, usize>,
}

impl DecisionTable {
    /// Builds a table from per-object rows. Row numbers in errors are
    /// 1-based positions in `rows`.
    pub fn new(objects: Vec<String>, schema: Vec<AttributeSchema>, rows: Vec<Vec<Code>>) -> Result<Self> {
        validate_schema(&schema)?;
        if objects.len() != rows.len() {
            return Err(Error::Schema(format!(
                "{} object ids for {} rows",
                objects.len(),
                rows.len()
            )));
        }
        let mut index = HashMap::with_capacity(objects.len());
        let mut values = Vec::with_capacity(objects.len() * schema.len());
        for (i, (id, row)) in objects.iter().zip(rows).enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateObject {
                    row: i + 1,
                    id: id.clone(),
                });
            }
            if row.len() != schema.len() {
                return Err(Error::Row {
                    row: i + 1,
                    message: format!("expected {} values, found {}", schema.len(), row.len()),
                });
            }
            for (attr, &code) in schema.iter().zip(&row) {
                if !attr.contains(code) {
                    return Err(Error::DomainViolation {
                        row: i + 1,
                        attribute: attr.name.clone(),
                        code,
                    });
                }
            }
            values.extend(row);
        }
        Ok(DecisionTable {
            objects,
            schema,
            values,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn n_attributes(&self) -> usize {
        self.schema.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, object: usize) -> &str {
        &self.objects[object]
    }

    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownObject(id.to_string()))
    }

    pub fn schema(&self) -> &[AttributeSchema] {
        &self.schema
    }

    pub fn attribute(&self, attr: usize) -> &AttributeSchema {
        &self.schema[attr]
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.schema
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn attribute_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.attribute_index(n.as_ref())).collect()
    }

    pub fn condition_attributes(&self) -> Vec<usize> {
        self.attributes_of(AttributeKind::Condition)
    }

    pub fn decision_attributes(&self) -> Vec<usize> {
        self.attributes_of(AttributeKind::Decision)
    }

    fn attributes_of(&self, kind: AttributeKind) -> Vec<usize> {
        (0..self.schema.len())
            .filter(|&a| self.schema[a].kind == kind)
            .collect()
    }

    /// The single decision column; rule induction requires exactly one.
    pub fn decision_attribute(&self) -> Result<usize> {
        match self.decision_attributes().as_slice() {
            [d] => Ok(*d),
            other => Err(Error::DecisionArity(other.len())),
        }
    }

    #[inline]
    pub fn value(&self, object: usize, attr: usize) -> Code {
        self.values[object * self.schema.len() + attr]
    }

    pub fn row(&self, object: usize) -> &[Code] {
        let w = self.schema.len();
        &self.values[object * w..(object + 1) * w]
    }

    pub fn universe(&self) -> ObjectSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        set.insert_range(..);
        set
    }

    /// Resolves object ids to a set over this table's universe.
    pub fn object_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<ObjectSet> {
        let mut set = FixedBitSet::with_capacity(self.len());
        for id in ids {
            set.insert(self.object_index(id.as_ref())?);
        }
        Ok(set)
    }

    pub fn object_ids(&self, set: &ObjectSet) -> Vec<&str> {
        set.ones().map(|o| self.object_id(o)).collect()
    }

    /// Objects whose `attr` column equals `code`.
    pub fn objects_with(&self, attr: usize, code: Code) -> ObjectSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for o in 0..self.len() {
            if self.value(o, attr) == code {
                set.insert(o);
            }
        }
        set
    }

    /// Same columns, restricted to the given objects in the given order.
    pub fn select(&self, objects: &[usize]) -> DecisionTable {
        let ids: Vec<String> = objects.iter().map(|&o| self.objects[o].clone()).collect();
        let mut values = Vec::with_capacity(objects.len() * self.schema.len());
        for &o in objects {
            values.extend_from_slice(self.row(o));
        }
        let index = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        DecisionTable {
            objects: ids,
            schema: self.schema.clone(),
            values,
            index,
        }
    }

    /// Same objects, restricted to the named columns in the order given.
    pub fn project<S: AsRef<str>>(&self, attrs: &[S]) -> Result<DecisionTable> {
        let cols = self.attribute_indices(attrs)?;
        let mut seen = HashSet::new();
        for &c in &cols {
            if !seen.insert(c) {
                return Err(Error::Schema(format!(
                    "attribute `{}` listed twice",
                    self.schema[c].name
                )));
            }
        }
        let schema = cols.iter().map(|&c| self.schema[c].clone()).collect();
        let mut values = Vec::with_capacity(self.len() * cols.len());
        for o in 0..self.len() {
            values.extend(cols.iter().map(|&c| self.value(o, c)));
        }
        Ok(DecisionTable {
            objects: self.objects.clone(),
            schema,
            values,
            index: self.index.clone(),
        })
    }

    /// Renders a value as `label` when the schema has one, else the code.
    pub fn display_value(&self, attr: usize, code: Code) -> String {
        match self.schema[attr].label(code) {
            Some(l) => l.to_string(),
            None => code.to_string(),
        }
    }
}

impl fmt::Display for DecisionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "object")?;
        for a in &self.schema {
            write!(f, "\t{}", a.name)?;
        }
        writeln!(f)?;
        for o in 0..self.len() {
            write!(f, "{}", self.objects[o])?;
            for &v in self.row(o) {
                write!(f, "\t{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
