//! Certain decision rules: induction from object-wise value reducts,
//! filtering, and validation against a held-out table.

mod filter;
mod induce;
mod io;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{Code, DecisionTable};
use crate::Rational;

pub use filter::{DescriptorPattern, RuleFilter};
pub use induce::{generate_candidate_rules, induce_rules, object_value_reducts, Induction, ObjectReducts};
pub use io::{read_rules, render_if_then, write_rules};
pub use validate::{
    match_object, percent_floor, validate_rules, DiscardReason, MatchKind, RuleValidation, ValidationReport, Verdict,
};

/// One `attribute = value` conjunct.
///
/// `index` is the column position in the table the rule was induced from;
/// it fixes the descriptor order. Matching against other tables goes by
/// `attribute` name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Descriptor {
    pub index: usize,
    pub attribute: String,
    pub value: Code,
}

impl Descriptor {
    pub fn of(table: &DecisionTable, attr: usize, value: Code) -> Self {
        Descriptor {
            index: attr,
            attribute: table.attribute(attr).name.clone(),
            value,
        }
    }

    /// Resolves this descriptor's column in `table`.
    pub fn column(&self, table: &DecisionTable) -> Result<usize> {
        table.attribute_index(&self.attribute)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.attribute, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleMetrics {
    /// Training objects satisfying premise and conclusion.
    pub support: usize,
    /// `support / |U|` over the training universe.
    #[serde(with = "ratio")]
    pub strength: Rational,
    /// `support / |class|` over the training members of the conclusion class.
    #[serde(with = "ratio")]
    pub class_strength: Rational,
    /// Validation accuracy, once the rule has been validated.
    #[serde(with = "ratio::option", default)]
    pub accuracy: Option<Rational>,
}

/// `premise → conclusion` with the training objects that support it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRule {
    pub id: String,
    /// Sorted, at most one descriptor per attribute.
    pub premise: Vec<Descriptor>,
    pub conclusion: Descriptor,
    pub support: Vec<String>,
    pub metrics: RuleMetrics,
}

impl DecisionRule {
    /// Builds a rule and computes its support on `table`. The rule does not
    /// have to be certain; support counts objects matching both sides.
    pub fn from_table(
        table: &DecisionTable,
        id: impl Into<String>,
        premise: &[(&str, Code)],
        conclusion: (&str, Code),
    ) -> Result<Self> {
        let mut descs = Vec::with_capacity(premise.len());
        for &(name, value) in premise {
            let a = table.attribute_index(name)?;
            if !table.attribute(a).contains(value) {
                return Err(Error::DomainViolation {
                    row: 0,
                    attribute: name.to_string(),
                    code: value,
                });
            }
            descs.push(Descriptor::of(table, a, value));
        }
        descs.sort();
        if descs.windows(2).any(|w| w[0].index == w[1].index) {
            return Err(Error::Schema("premise repeats an attribute".into()));
        }
        let d = table.attribute_index(conclusion.0)?;
        let conclusion = Descriptor::of(table, d, conclusion.1);
        Ok(induce::finish_rule(table, id.into(), descs, conclusion))
    }

    pub fn class(&self) -> Code {
        self.conclusion.value
    }

    pub fn premise_text(&self) -> String {
        self.premise
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.id, self.premise_text(), self.conclusion)
    }
}

/// Rationals as `"n/d"` strings in rule and report files.
pub(crate) mod ratio {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))
    }

    pub fn parse(s: &str) -> Option<Rational> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let (n, d): (u64, u64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
        (d != 0).then(|| Rational::new(n, d))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            match Option::<String>::deserialize(d)? {
                None => Ok(None),
                Some(s) => parse(&s)
                    .map(Some)
                    .ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))),
            }
        }
    }
}

/// Parses `0.6`, `60%` or `3/5` into an exact fraction.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some(p) = s.strip_suffix('%') {
        return parse_fraction(p).map(|r| r / Rational::from_integer(100));
    }
    if s.contains('/') {
        return ratio::parse(s);
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return None;
    }
    let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let scale = 10u64.pow(frac.len() as u32);
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some(Rational::new(int.checked_mul(scale)?.checked_add(frac)?, scale))
}
