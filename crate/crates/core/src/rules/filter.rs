use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DecisionRule, Descriptor};
use crate::error::Error;
use crate::table::Code;

/// `attribute=value`, matched by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DescriptorPattern {
    pub attribute: String,
    pub value: Code,
}

impl DescriptorPattern {
    pub fn matches(&self, d: &Descriptor) -> bool {
        d.attribute == self.attribute && d.value == self.value
    }
}

impl FromStr for DescriptorPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Config(format!("descriptor `{s}` is not of the form name=code"));
        let (name, value) = s.split_once('=').ok_or_else(bad)?;
        let name = name.trim();
        if name.is_empty() {
            return Err(bad());
        }
        Ok(DescriptorPattern {
            attribute: name.to_string(),
            value: value.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for DescriptorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.attribute, self.value)
    }
}

impl Serialize for DescriptorPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DescriptorPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Declarative stand-in for the expert review between induction and
/// validation.
///
/// A rule passes when its support reaches `min_support`, its premise is no
/// longer than `max_premise_len`, it contains at least one `require`
/// descriptor (when that list is nonempty) and none of the `forbid` ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuleFilter {
    pub min_support: usize,
    pub max_premise_len: Option<usize>,
    pub require: Vec<DescriptorPattern>,
    pub forbid: Vec<DescriptorPattern>,
}

impl Default for RuleFilter {
    fn default() -> Self {
        RuleFilter {
            min_support: 1,
            max_premise_len: None,
            require: Vec::new(),
            forbid: Vec::new(),
        }
    }
}

impl RuleFilter {
    pub fn admits(&self, rule: &DecisionRule) -> bool {
        let has = |pats: &[DescriptorPattern]| rule.premise.iter().any(|d| pats.iter().any(|p| p.matches(d)));
        rule.metrics.support >= self.min_support
            && self.max_premise_len.is_none_or(|m| rule.premise.len() <= m)
            && (self.require.is_empty() || has(&self.require))
            && !has(&self.forbid)
    }

    pub fn apply(&self, rules: Vec<DecisionRule>) -> Vec<DecisionRule> {
        rules.into_iter().filter(|r| self.admits(r)).collect()
    }
}
