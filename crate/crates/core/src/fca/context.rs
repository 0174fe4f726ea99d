use std::collections::HashSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::rules::{DecisionRule, Descriptor};

/// Set of attribute indices of a context.
pub type AttributeSet = FixedBitSet;

/// A formal context `(G, M, I)` stored as both row and column bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<FixedBitSet>,
    cols: Vec<FixedBitSet>,
}

impl FormalContext {
    /// `incidence[g][m]` is true when object `g` has attribute `m`.
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: &[Vec<bool>]) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::Schema(format!(
                "{} incidence rows for {} objects",
                incidence.len(),
                objects.len()
            )));
        }
        let mut rows = Vec::with_capacity(objects.len());
        for (g, row) in incidence.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::Row {
                    row: g + 1,
                    message: format!("expected {} incidence cells, found {}", attributes.len(), row.len()),
                });
            }
            let mut bits = FixedBitSet::with_capacity(attributes.len());
            bits.extend(row.iter().enumerate().filter(|(_, &x)| x).map(|(m, _)| m));
            rows.push(bits);
        }
        Self::from_rows(objects, attributes, rows)
    }

    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<FixedBitSet>) -> Result<Self> {
        check_unique(&objects, "object")?;
        check_unique(&attributes, "attribute")?;
        let m = attributes.len();
        let mut cols = vec![FixedBitSet::with_capacity(objects.len()); m];
        let rows: Vec<FixedBitSet> = rows
            .into_iter()
            .map(|r| {
                let mut fixed = FixedBitSet::with_capacity(m);
                fixed.extend(r.ones().filter(|&a| a < m));
                fixed
            })
            .collect();
        for (g, row) in rows.iter().enumerate() {
            for a in row.ones() {
                cols[a].insert(g);
            }
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            cols,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn has(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// Attributes of one object.
    pub fn row(&self, object: usize) -> &FixedBitSet {
        &self.rows[object]
    }

    /// Objects having one attribute.
    pub fn column(&self, attribute: usize) -> &FixedBitSet {
        &self.cols[attribute]
    }

    pub fn empty_objects(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n_objects())
    }

    pub fn empty_attributes(&self) -> AttributeSet {
        FixedBitSet::with_capacity(self.n_attributes())
    }

    pub fn all_objects(&self) -> FixedBitSet {
        let mut s = self.empty_objects();
        s.insert_range(..);
        s
    }

    pub fn all_attributes(&self) -> AttributeSet {
        let mut s = self.empty_attributes();
        s.insert_range(..);
        s
    }

    /// `X'`: attributes shared by every object in `objects`. Indices must be
    /// in range; see [`derive_attributes`](Self::derive_attributes).
    pub fn intent(&self, objects: &FixedBitSet) -> AttributeSet {
        let mut out = self.all_attributes();
        for g in objects.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `Y'`: objects having every attribute in `attrs`.
    pub fn extent(&self, attrs: &AttributeSet) -> FixedBitSet {
        let mut out = self.all_objects();
        for m in attrs.ones() {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    /// `Y''`.
    pub fn closure(&self, attrs: &AttributeSet) -> AttributeSet {
        self.intent(&self.extent(attrs))
    }

    /// `X''`.
    pub fn object_closure(&self, objects: &FixedBitSet) -> FixedBitSet {
        self.extent(&self.intent(objects))
    }

    pub fn derive_attributes(&self, objects: &FixedBitSet) -> Result<AttributeSet> {
        if let Some(g) = objects.ones().find(|&g| g >= self.n_objects()) {
            return Err(Error::ObjectOutOfRange(g));
        }
        Ok(self.intent(objects))
    }

    pub fn derive_objects(&self, attrs: &AttributeSet) -> Result<FixedBitSet> {
        if let Some(m) = attrs.ones().find(|&m| m >= self.n_attributes()) {
            return Err(Error::UnknownAttribute(format!("#{m}")));
        }
        Ok(self.extent(attrs))
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        let mut s = self.empty_objects();
        for n in names {
            let n = n.as_ref();
            let i = self
                .objects
                .iter()
                .position(|o| o == n)
                .ok_or_else(|| Error::UnknownObject(n.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut s = self.empty_attributes();
        for n in names {
            let n = n.as_ref();
            let i = self
                .attributes
                .iter()
                .position(|a| a == n)
                .ok_or_else(|| Error::UnknownAttribute(n.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn object_names(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|g| self.objects[g].as_str()).collect()
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<&str> {
        set.ones().map(|m| self.attributes[m].as_str()).collect()
    }

    /// Burmeister `.cxt` text.
    pub fn to_cxt(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "B\n\n{}\n{}\n\n", self.n_objects(), self.n_attributes());
        for g in &self.objects {
            out.push_str(g);
            out.push('\n');
        }
        for m in &self.attributes {
            out.push_str(m);
            out.push('\n');
        }
        for row in &self.rows {
            for m in 0..self.n_attributes() {
                out.push(if row.contains(m) { 'X' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_cxt(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")))
        };
        let (ln, magic) = next("`B`")?;
        if magic.trim() != "B" {
            return Err(Error::parse(ln, "expected `B`"));
        }
        let (mut ln, mut line) = next("object count")?;
        if line.trim().is_empty() {
            (ln, line) = next("object count")?;
        }
        let n: usize = line.trim().parse().map_err(|_| Error::parse(ln, "bad object count"))?;
        let (ln, line) = next("attribute count")?;
        let m: usize = line
            .trim()
            .parse()
            .map_err(|_| Error::parse(ln, "bad attribute count"))?;
        let (mut ln, mut line) = next("names")?;
        if line.trim().is_empty() && n + m > 0 {
            (ln, line) = next("names")?;
        }
        let mut names = Vec::with_capacity(n + m);
        if n + m > 0 {
            names.push(line.to_string());
            for _ in 1..n + m {
                names.push(next("names")?.1.to_string());
            }
        } else {
            let _ = ln;
        }
        let attributes = names.split_off(n);
        let objects = names;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = next("incidence row")?;
            let cells: Vec<char> = line.trim().chars().collect();
            if cells.len() != m {
                return Err(Error::parse(ln, format!("expected {m} cells, found {}", cells.len())));
            }
            let mut bits = FixedBitSet::with_capacity(m);
            for (a, c) in cells.iter().enumerate() {
                match c {
                    'X' | 'x' => bits.insert(a),
                    '.' => {}
                    other => return Err(Error::parse(ln, format!("bad incidence cell `{other}`"))),
                }
            }
            rows.push(bits);
        }
        Self::from_rows(objects, attributes, rows)
    }
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Schema(format!("duplicate {what} name `{n}`")));
        }
    }
    Ok(())
}

/// Rules of one decision class as objects, their premise descriptors as
/// attributes. The shared decision descriptor is left out. Columns are
/// ordered by (attribute position, value).
pub fn rules_to_context(rules: &[DecisionRule]) -> Result<FormalContext> {
    let first = rules.first().ok_or(Error::NoRules)?;
    if rules.iter().any(|r| r.conclusion != first.conclusion) {
        return Err(Error::MixedClasses);
    }
    for (i, a) in rules.iter().enumerate() {
        if let Some(b) = rules[i + 1..].iter().find(|b| b.premise == a.premise) {
            return Err(Error::DuplicatePremise(a.id.clone(), b.id.clone()));
        }
    }
    let mut columns: Vec<&Descriptor> = rules.iter().flat_map(|r| &r.premise).collect();
    columns.sort();
    columns.dedup();
    let rows = rules
        .iter()
        .map(|r| {
            let mut bits = FixedBitSet::with_capacity(columns.len());
            for d in &r.premise {
                bits.insert(columns.binary_search(&d).expect("descriptor collected above"));
            }
            bits
        })
        .collect();
    FormalContext::from_rows(
        rules.iter().map(|r| r.id.clone()).collect(),
        columns.iter().map(|d| d.to_string()).collect(),
        rows,
    )
}
