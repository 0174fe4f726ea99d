//! Rule files: one JSON object per line, in rule order.

use std::io::{BufRead, Write};

use super::{DecisionRule, RuleValidation};
use crate::error::{Error, Result};

pub fn write_rules<W: Write>(rules: &[DecisionRule], mut w: W) -> Result<()> {
    for r in rules {
        let line = serde_json::to_string(r).expect("rule serializes");
        writeln!(w, "{line}").map_err(|e| Error::io("<rule writer>", e))?;
    }
    Ok(())
}

pub fn read_rules<R: BufRead>(r: R) -> Result<Vec<DecisionRule>> {
    let mut rules = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<rule reader>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        rules.push(serde_json::from_str(&line).map_err(|e| Error::parse(i + 1, e.to_string()))?);
    }
    Ok(rules)
}

fn join_conjuncts(parts: &[String]) -> String {
    match parts {
        [] => String::new(),
        [one] => one.clone(),
        [a, b] => format!("{a} and {b}"),
        [init @ .., last] => format!("{}, and {last}", init.join(", ")),
    }
}

/// Human-readable form:
///
/// ```text
/// [R1_1] IF a3 = 1 and a4 = 1
///        THEN d = 1
///        Support: 8  Non-support: 1  Accuracy: 88%
/// ```
///
/// The third line appears only with a validation entry.
pub fn render_if_then(rule: &DecisionRule, validation: Option<&RuleValidation>) -> String {
    let head = format!("[{}]", rule.id);
    let pad = " ".repeat(head.len());
    let parts: Vec<String> = rule
        .premise
        .iter()
        .map(|d| format!("{} = {}", d.attribute, d.value))
        .collect();
    let mut out = format!(
        "{head} IF {}\n{pad} THEN {} = {}\n",
        join_conjuncts(&parts),
        rule.conclusion.attribute,
        rule.conclusion.value
    );
    if let Some(v) = validation {
        let acc = match v.percent() {
            Some(p) => format!("{p}%"),
            None => "n/a".to_string(),
        };
        out.push_str(&format!(
            "{pad} Support: {}  Non-support: {}  Accuracy: {acc}\n",
            v.supported, v.non_supported
        ));
    }
    out
}
