use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::implications::Implication;

/// One attribute seen as a superconcept: the premises (subconcepts) of the
/// implications that conclude it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub attribute: usize,
    pub subconcepts: Vec<FixedBitSet>,
    /// Premise attributes counted with multiplicity over `subconcepts`.
    pub frequency: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChiefFactorReport {
    /// Attributes with nonzero frequency, most frequent first; ties keep
    /// attribute order.
    pub factors: Vec<ChiefFactor>,
}

impl ChiefFactorReport {
    pub fn frequency_of(&self, attribute: usize) -> usize {
        self.factors
            .iter()
            .find(|f| f.attribute == attribute)
            .map_or(0, |f| f.frequency)
    }

    pub fn ranking(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.attribute).collect()
    }
}

/// Ranks attributes by how much premise material points at them. For each
/// attribute `c`, its frequency is the total size of the premises of the
/// implications whose conclusion contains `c`.
///
/// Implications with zero support are skipped: their premise describes no
/// rule, so they hold vacuously and would otherwise conclude everything.
pub fn chief_factors(implications: &[Implication]) -> ChiefFactorReport {
    let width = implications
        .iter()
        .map(|i| i.premise.len().max(i.conclusion.len()))
        .max()
        .unwrap_or(0);
    let mut factors: Vec<ChiefFactor> = (0..width)
        .map(|attribute| ChiefFactor {
            attribute,
            subconcepts: Vec::new(),
            frequency: 0,
        })
        .collect();
    for imp in implications.iter().filter(|i| i.support > 0) {
        let size = imp.premise.count_ones(..);
        for c in imp.conclusion.ones() {
            factors[c].subconcepts.push(imp.premise.clone());
            factors[c].frequency += size;
        }
    }
    factors.retain(|f| f.frequency > 0);
    factors.sort_by(|a, b| b.frequency.cmp(&a.frequency).then(a.attribute.cmp(&b.attribute)));
    ChiefFactorReport { factors }
}

/// How frequencies are counted, printed at the top of every report.
pub const COUNTING_NOTE: &str = "frequency = premise attributes summed over the supported implications \
     whose conclusion contains the superconcept";

/// Table with one line per ranked attribute:
/// `a3=1  4  {a1=3 a2=2}, {a4=1}`.
pub fn render_chief_factors(report: &ChiefFactorReport, attributes: &[String]) -> String {
    let width = report
        .factors
        .iter()
        .map(|f| attributes[f.attribute].len())
        .chain(std::iter::once("superconcept".len()))
        .max()
        .unwrap_or(0);
    let mut out = format!(
        "# {COUNTING_NOTE}\n{:<width$}  frequency  subconcepts\n",
        "superconcept"
    );
    for f in &report.factors {
        let subs: Vec<String> = f
            .subconcepts
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.ones().map(|i| attributes[i].as_str()).collect();
                format!("{{{}}}", names.join(" "))
            })
            .collect();
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {}",
            attributes[f.attribute],
            f.frequency,
            subs.join(", ")
        );
    }
    out
}
