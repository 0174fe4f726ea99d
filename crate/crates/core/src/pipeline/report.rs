use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::rules::{percent_floor, render_if_then, DecisionRule, DiscardReason, RuleValidation, Verdict};
use crate::table::Code;
use crate::Rational;

/// Rule counts at the three stages of the funnel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunnelCounts {
    pub generated: usize,
    pub filtered: usize,
    pub validated: usize,
}

impl FunnelCounts {
    pub fn is_monotone(&self) -> bool {
        self.generated >= self.filtered && self.filtered >= self.validated
    }

    fn add(&mut self, other: &FunnelCounts) {
        self.generated += other.generated;
        self.filtered += other.filtered;
        self.validated += other.validated;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: Code,
    /// Display form of the class, e.g. `d = 1`.
    pub label: String,
    pub train_members: usize,
    /// Training members with no certain rule because an object with equal
    /// condition values has another decision.
    pub conflicts: Vec<String>,
    pub counts: FunnelCounts,
    /// Files written for this class, relative to the output directory.
    pub artifacts: Vec<String>,
    /// Rules that passed the filter, aligned with `validation`.
    pub candidates: Vec<DecisionRule>,
    pub validation: Vec<RuleValidation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(with = "crate::rules::ratio")]
    pub threshold: Rational,
    pub split_ratio: Option<f64>,
    pub seed: u64,
    pub train_objects: usize,
    pub test_objects: usize,
    pub classes: Vec<ClassReport>,
    pub totals: FunnelCounts,
}

impl RunReport {
    pub fn new(
        threshold: Rational,
        split_ratio: Option<f64>,
        seed: u64,
        train_objects: usize,
        test_objects: usize,
        classes: Vec<ClassReport>,
    ) -> Self {
        let mut totals = FunnelCounts::default();
        for c in &classes {
            totals.add(&c.counts);
        }
        RunReport {
            threshold,
            split_ratio,
            seed,
            train_objects,
            test_objects,
            classes,
            totals,
        }
    }

    pub fn class(&self, class: Code) -> Option<&ClassReport> {
        self.classes.iter().find(|c| c.class == class)
    }
}

fn verdict_text(v: &RuleValidation) -> &'static str {
    match v.verdict {
        Verdict::Kept => "kept",
        Verdict::Discarded(DiscardReason::BelowThreshold) => "discarded, below threshold",
        Verdict::Discarded(DiscardReason::NoCoverage) => "discarded, fired on no test object",
    }
}

/// Plain-text summary: a count table per class, then every candidate rule
/// in IF/THEN form with its validation figures.
pub fn render_report(report: &RunReport) -> String {
    let mut out = String::from("Rule mining report\n");
    let _ = writeln!(
        out,
        "threshold {}% ({}/{}), train objects {}, test objects {}",
        percent_floor(report.threshold),
        report.threshold.numer(),
        report.threshold.denom(),
        report.train_objects,
        report.test_objects
    );
    if report.classes.is_empty() {
        return out;
    }
    let _ = writeln!(
        out,
        "\n{:<12} {:>9} {:>9} {:>9} {:>9}",
        "class", "members", "generated", "filtered", "validated"
    );
    for c in &report.classes {
        let _ = writeln!(
            out,
            "{:<12} {:>9} {:>9} {:>9} {:>9}",
            c.label, c.train_members, c.counts.generated, c.counts.filtered, c.counts.validated
        );
    }
    let t = &report.totals;
    let _ = writeln!(
        out,
        "{:<12} {:>9} {:>9} {:>9} {:>9}",
        "total", "", t.generated, t.filtered, t.validated
    );

    for c in &report.classes {
        let _ = writeln!(out, "\nDecision class {}", c.label);
        if !c.conflicts.is_empty() {
            let _ = writeln!(out, "Inconsistent members: {}", c.conflicts.join(", "));
        }
        if c.candidates.is_empty() {
            out.push_str("No candidate rules.\n");
        }
        for (rule, v) in c.candidates.iter().zip(&c.validation) {
            out.push_str(&render_if_then(rule, Some(v)));
            let pad = " ".repeat(rule.id.len() + 2);
            let _ = writeln!(out, "{pad} Verdict: {}", verdict_text(v));
        }
        if !c.artifacts.is_empty() {
            let _ = writeln!(out, "Artifacts: {}", c.artifacts.join(", "));
        }
    }
    out
}
