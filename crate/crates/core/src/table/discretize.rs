//! Interval binning of numeric columns into discrete codes.
//!
//! Each bin is half-open `[lo, hi)`, except the bin with the largest upper
//! bound, which is closed `[lo, hi]`. Unbounded ends are written `-inf` and
//! `inf`. With LDL cholesterol cut at 160/190/250 this sends 160 to the
//! second bin and 190 to the third.
//!
//! Spec file syntax (TOML, one table per attribute):
//!
//! ```toml
//! [cholesterol]
//! bins = [[-inf, 160, 1], [160, 190, 2], [190, 250, 3], [250, inf, 4]]
//! labels = ["low", "medium", "high", "very high"]   # optional, parallel to bins
//!
//! [chest_pain]
//! passthrough = true
//! ```
//!
//! Attributes not named in the spec are passed through unchanged and must
//! already hold non-negative integer codes.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::File;
use std::io::Read;
use std::path::Path;

use super::{AttributeKind, AttributeSchema, Code, DecisionTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub code: Code,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BinSpec {
    Passthrough,
    /// Sorted by `lo`, pairwise disjoint.
    Bins(Vec<Bin>),
}

impl BinSpec {
    pub fn bins(attribute: &str, mut bins: Vec<Bin>) -> Result<Self> {
        let err = |message: String| Error::Discretization {
            attribute: attribute.to_string(),
            message,
        };
        if bins.is_empty() {
            return Err(err("no bins".into()));
        }
        for b in &bins {
            if b.lo.is_nan() || b.hi.is_nan() || b.lo >= b.hi {
                return Err(err(format!("interval [{}, {}] is empty or inverted", b.lo, b.hi)));
            }
        }
        bins.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for w in bins.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(err(format!(
                    "intervals [{}, {}) and [{}, {}) overlap",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        Ok(BinSpec::Bins(bins))
    }

    /// Code of the bin holding `value`, if any.
    pub fn code_of(&self, value: f64) -> Option<Code> {
        match self {
            BinSpec::Passthrough => {
                (value >= 0.0 && value.fract() == 0.0 && value <= Code::MAX as f64).then_some(value as Code)
            }
            BinSpec::Bins(bins) => {
                let last = bins.len() - 1;
                bins.iter().enumerate().find_map(|(i, b)| {
                    let upper_ok = if i == last { value <= b.hi } else { value < b.hi };
                    (value >= b.lo && upper_ok).then_some(b.code)
                })
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiscretizationSpec {
    pub attributes: BTreeMap<String, BinSpec>,
}

impl DiscretizationSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let root: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Discretization {
            attribute: "<file>".into(),
            message: e.to_string(),
        })?;
        let mut attributes = BTreeMap::new();
        for (name, value) in root {
            let err = |message: &str| Error::Discretization {
                attribute: name.clone(),
                message: message.to_string(),
            };
            let table = value.as_table().ok_or_else(|| err("expected a table"))?;
            if table.get("passthrough").and_then(toml::Value::as_bool) == Some(true) {
                if table.contains_key("bins") {
                    return Err(err("both `passthrough` and `bins` given"));
                }
                attributes.insert(name.clone(), BinSpec::Passthrough);
                continue;
            }
            let raw = table
                .get("bins")
                .and_then(toml::Value::as_array)
                .ok_or_else(|| err("expected `bins = [[lo, hi, code], ...]` or `passthrough = true`"))?;
            let labels = match table.get("labels") {
                None => None,
                Some(v) => {
                    let arr = v.as_array().ok_or_else(|| err("`labels` must be an array"))?;
                    let labels: Option<Vec<String>> = arr.iter().map(|l| l.as_str().map(str::to_string)).collect();
                    let labels = labels.ok_or_else(|| err("`labels` must hold strings"))?;
                    if labels.len() != raw.len() {
                        return Err(err("`labels` must be parallel to `bins`"));
                    }
                    Some(labels)
                }
            };
            let mut bins = Vec::with_capacity(raw.len());
            for (i, triple) in raw.iter().enumerate() {
                let t = triple
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| err("each bin must be a `[lo, hi, code]` triple"))?;
                let num = |v: &toml::Value| v.as_float().or_else(|| v.as_integer().map(|i| i as f64));
                let lo = num(&t[0]).ok_or_else(|| err("bin bound is not a number"))?;
                let hi = num(&t[1]).ok_or_else(|| err("bin bound is not a number"))?;
                let code = t[2]
                    .as_integer()
                    .and_then(|c| Code::try_from(c).ok())
                    .ok_or_else(|| err("bin code must be a non-negative integer"))?;
                bins.push(Bin {
                    lo,
                    hi,
                    code,
                    label: labels.as_ref().map(|l| l[i].clone()),
                });
            }
            attributes.insert(name.clone(), BinSpec::bins(&name, bins)?);
        }
        Ok(DiscretizationSpec { attributes })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get(&self, attribute: &str) -> &BinSpec {
        self.attributes.get(attribute).unwrap_or(&BinSpec::Passthrough)
    }
}

/// A table of raw numeric measurements, same CSV layout as a decision table.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTable {
    pub objects: Vec<String>,
    pub names: Vec<String>,
    pub kinds: Vec<AttributeKind>,
    pub rows: Vec<Vec<f64>>,
}

impl RawTable {
    pub fn read<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut records = rdr.records();
        let header = records.next().ok_or(Error::NoObjects)??;
        let kinds_rec = records.next().ok_or(Error::NoObjects)??;
        if header.len() < 2 || kinds_rec.len() != header.len() {
            return Err(Error::Row {
                row: 2,
                message: "header and kind rows must have equal width of at least two".into(),
            });
        }
        let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let kinds = names
            .iter()
            .zip(kinds_rec.iter().skip(1))
            .map(|(n, k)| {
                AttributeKind::from_symbol(k).ok_or_else(|| Error::Row {
                    row: 2,
                    message: format!("attribute `{n}` has kind `{k}`, expected C or D"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut objects = Vec::new();
        let mut seen = HashSet::new();
        let mut rows = Vec::new();
        for (i, rec) in records.enumerate() {
            let line = i + 3;
            let rec = rec?;
            if rec.iter().all(|c| c.is_empty()) {
                continue;
            }
            if rec.len() != header.len() {
                return Err(Error::Row {
                    row: line,
                    message: format!("expected {} cells, found {}", header.len(), rec.len()),
                });
            }
            if !seen.insert(rec[0].to_string()) {
                return Err(Error::DuplicateObject {
                    row: line,
                    id: rec[0].to_string(),
                });
            }
            let mut row = Vec::with_capacity(names.len());
            for (cell, name) in rec.iter().skip(1).zip(&names) {
                if cell.is_empty() || cell == "?" {
                    return Err(Error::MissingValue {
                        row: line,
                        attribute: name.clone(),
                    });
                }
                row.push(cell.parse::<f64>().map_err(|_| Error::Row {
                    row: line,
                    message: format!("`{cell}` for attribute `{name}` is not numeric"),
                })?);
            }
            objects.push(rec[0].to_string());
            rows.push(row);
        }
        if objects.is_empty() {
            return Err(Error::NoObjects);
        }
        Ok(RawTable {
            objects,
            names,
            kinds,
            rows,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read(file)
    }
}

/// Replaces every numeric cell by the code of its bin. Row numbers in
/// errors are 1-based positions among the data rows.
pub fn discretize(raw: &RawTable, spec: &DiscretizationSpec) -> Result<DecisionTable> {
    for name in spec.attributes.keys() {
        if !raw.names.contains(name) {
            return Err(Error::UnknownAttribute(name.clone()));
        }
    }
    let mut rows: Vec<Vec<Code>> = vec![Vec::with_capacity(raw.names.len()); raw.rows.len()];
    let mut schema = Vec::with_capacity(raw.names.len());
    for (col, name) in raw.names.iter().enumerate() {
        let bins = spec.get(name);
        for (r, row) in raw.rows.iter().enumerate() {
            let value = row[col];
            let code = bins.code_of(value).ok_or_else(|| match bins {
                BinSpec::Passthrough => Error::Row {
                    row: r + 1,
                    message: format!("pass-through attribute `{name}` holds non-code value {value}"),
                },
                BinSpec::Bins(_) => Error::Unbinned {
                    row: r + 1,
                    attribute: name.clone(),
                    value,
                },
            })?;
            rows[r].push(code);
        }
        let attr = match bins {
            BinSpec::Passthrough => {
                let domain: BTreeSet<Code> = rows.iter().map(|r| r[col]).collect();
                AttributeSchema::new(name.clone(), raw.kinds[col], domain.into_iter().collect())
            }
            BinSpec::Bins(bins) => {
                let mut domain: Vec<Code> = Vec::new();
                let mut labels = Vec::new();
                let mut by_code: Vec<&Bin> = bins.iter().collect();
                by_code.sort_by_key(|b| b.code);
                for b in by_code {
                    if !domain.contains(&b.code) {
                        domain.push(b.code);
                        labels.push(b.label.clone());
                    }
                }
                let mut attr = AttributeSchema::new(name.clone(), raw.kinds[col], domain);
                if labels.iter().all(Option::is_some) {
                    attr.labels = Some(labels.into_iter().flatten().collect());
                }
                attr
            }
        };
        schema.push(attr);
    }
    DecisionTable::new(raw.objects.clone(), schema, rows)
}
