use serde::{Deserialize, Serialize};

use super::DecisionRule;
use crate::error::{Error, Result};
use crate::table::{Code, DecisionTable};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchKind {
    /// Premise and conclusion both hold.
    Supports,
    /// Premise holds, conclusion does not.
    Contradicts,
    /// Premise does not hold.
    NoFire,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscardReason {
    BelowThreshold,
    /// The rule fired on no test object, so its accuracy is undefined.
    NoCoverage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "reason")]
pub enum Verdict {
    Kept,
    Discarded(DiscardReason),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleValidation {
    pub rule: String,
    pub supported: usize,
    pub non_supported: usize,
    #[serde(with = "super::ratio::option")]
    pub accuracy: Option<Rational>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl RuleValidation {
    /// Builds the verdict from raw counts: accuracy is
    /// `supported / (supported + non_supported)` and the rule is kept when
    /// that reaches the threshold.
    pub fn from_counts(rule: impl Into<String>, supported: usize, non_supported: usize, threshold: Rational) -> Self {
        let fired = supported + non_supported;
        let accuracy = (fired > 0).then(|| Rational::new(supported as u64, fired as u64));
        let verdict = match accuracy {
            None => Verdict::Discarded(DiscardReason::NoCoverage),
            Some(a) if a >= threshold => Verdict::Kept,
            Some(_) => Verdict::Discarded(DiscardReason::BelowThreshold),
        };
        RuleValidation {
            rule: rule.into(),
            supported,
            non_supported,
            accuracy,
            verdict,
        }
    }

    pub fn kept(&self) -> bool {
        self.verdict == Verdict::Kept
    }

    pub fn percent(&self) -> Option<u64> {
        self.accuracy.map(percent_floor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    #[serde(with = "super::ratio")]
    pub threshold: Rational,
    pub rules: Vec<RuleValidation>,
}

impl ValidationReport {
    pub fn kept_count(&self) -> usize {
        self.rules.iter().filter(|r| r.kept()).count()
    }

    /// The kept rules, with their validation accuracy recorded.
    pub fn apply(&self, rules: &[DecisionRule]) -> Vec<DecisionRule> {
        rules
            .iter()
            .zip(&self.rules)
            .filter(|(_, v)| v.kept())
            .map(|(r, v)| {
                let mut r = r.clone();
                r.metrics.accuracy = v.accuracy;
                r
            })
            .collect()
    }
}

/// Integer percent rounded down: 8/9 → 88, 2/3 → 66.
pub fn percent_floor(r: Rational) -> u64 {
    r.numer() * 100 / r.denom()
}

struct Matcher {
    premise: Vec<(usize, Code)>,
    conclusion: (usize, Code),
}

impl Matcher {
    fn new(rule: &DecisionRule, table: &DecisionTable) -> Result<Self> {
        Ok(Matcher {
            premise: rule
                .premise
                .iter()
                .map(|d| Ok((d.column(table)?, d.value)))
                .collect::<Result<_>>()?,
            conclusion: (rule.conclusion.column(table)?, rule.conclusion.value),
        })
    }

    fn classify(&self, table: &DecisionTable, o: usize) -> MatchKind {
        if !self.premise.iter().all(|&(a, v)| table.value(o, a) == v) {
            MatchKind::NoFire
        } else if table.value(o, self.conclusion.0) == self.conclusion.1 {
            MatchKind::Supports
        } else {
            MatchKind::Contradicts
        }
    }
}

/// How one object of `table` relates to `rule`. Attributes are looked up by
/// name, so `table` may be any table sharing the rule's columns.
pub fn match_object(rule: &DecisionRule, table: &DecisionTable, object: &str) -> Result<MatchKind> {
    let o = table.object_index(object)?;
    Ok(Matcher::new(rule, table)?.classify(table, o))
}

/// Scores each rule on `test`. Objects where the premise does not fire are
/// left out of the denominator.
pub fn validate_rules(rules: &[DecisionRule], test: &DecisionTable, threshold: Rational) -> Result<ValidationReport> {
    if rules.is_empty() {
        return Err(Error::NoRules);
    }
    if threshold > Rational::from_integer(1) {
        return Err(Error::InvalidThreshold(
            *threshold.numer() as f64 / *threshold.denom() as f64,
        ));
    }
    let rules = rules
        .iter()
        .map(|rule| {
            let m = Matcher::new(rule, test)?;
            let (mut s, mut c) = (0, 0);
            for o in 0..test.len() {
                match m.classify(test, o) {
                    MatchKind::Supports => s += 1,
                    MatchKind::Contradicts => c += 1,
                    MatchKind::NoFire => {}
                }
            }
            Ok(RuleValidation::from_counts(rule.id.clone(), s, c, threshold))
        })
        .collect::<Result<_>>()?;
    Ok(ValidationReport { threshold, rules })
}
