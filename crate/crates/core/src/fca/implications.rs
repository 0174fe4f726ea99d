use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::concepts::next_closure;
use super::context::{AttributeSet, FormalContext};
use crate::error::{Error, Result};

/// `premise ⟹ conclusion` over the attribute indices of a context. The
/// conclusion never repeats premise attributes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: AttributeSet,
    pub conclusion: AttributeSet,
    /// Number of objects having every premise attribute.
    pub support: usize,
}

impl Implication {
    pub fn holds_in(&self, ctx: &FormalContext) -> bool {
        self.conclusion.is_subset(&ctx.closure(&self.premise))
    }
}

fn saturate(implications: &[Implication], set: &AttributeSet, proper: bool) -> AttributeSet {
    let mut x = set.clone();
    loop {
        let mut changed = false;
        for imp in implications {
            let fires = imp.premise.is_subset(&x) && (!proper || imp.premise != x);
            if fires && !imp.conclusion.is_subset(&x) {
                x.union_with(&imp.conclusion);
                changed = true;
            }
        }
        if !changed {
            return x;
        }
    }
}

/// Smallest superset of `set` respected by every implication.
pub fn closure_under(implications: &[Implication], set: &AttributeSet) -> AttributeSet {
    saturate(implications, set, false)
}

/// The Duquenne–Guigues basis: one implication per pseudo-intent, in lectic
/// order of premises. Every implication valid in `ctx` follows from it and
/// no member can be dropped.
pub fn implication_basis(ctx: &FormalContext) -> Vec<Implication> {
    let m = ctx.n_attributes();
    let mut basis: Vec<Implication> = Vec::new();
    let mut current = ctx.empty_attributes();
    loop {
        let closed = ctx.closure(&current);
        if closed != current {
            let mut conclusion = closed;
            conclusion.difference_with(&current);
            basis.push(Implication {
                support: ctx.extent(&current).count_ones(..),
                premise: current.clone(),
                conclusion,
            });
        }
        // Sets closed under the proper-subset closure of the basis so far
        // are exactly the intents and pseudo-intents still to come.
        match next_closure(&current, m, |x| saturate(&basis, x, true)) {
            Some(next) => current = next,
            None => return basis,
        }
    }
}

fn names(set: &FixedBitSet, attributes: &[String]) -> String {
    set.ones().map(|i| attributes[i].as_str()).collect::<Vec<_>>().join(" ")
}

/// One implication per line: `3 < 2 > a1=3 a2=2 ==> a3=1;`, numbered from 1,
/// with the support between angle brackets.
pub fn render_implications(implications: &[Implication], attributes: &[String]) -> String {
    let mut out = String::new();
    for (i, imp) in implications.iter().enumerate() {
        let premise = names(&imp.premise, attributes);
        let sep = if premise.is_empty() { "" } else { " " };
        let _ = writeln!(
            out,
            "{} < {} > {premise}{sep}==> {};",
            i + 1,
            imp.support,
            names(&imp.conclusion, attributes)
        );
    }
    out
}

/// Implications read back from text, with the attribute names they use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedImplications {
    pub attributes: Vec<String>,
    pub implications: Vec<Implication>,
}

/// Parses the format of [`render_implications`]. `⟹` and `=>` are accepted
/// as arrows, several `;`-terminated entries may share a line, and the
/// leading number is optional. Names in `known` keep their positions; new
/// names are appended in order of first appearance.
pub fn parse_implications(text: &str, known: &[String]) -> Result<ParsedImplications> {
    let mut attributes = known.to_vec();
    let mut raw: Vec<(Vec<usize>, Vec<usize>, usize)> = Vec::new();
    fn intern(name: &str, attributes: &mut Vec<String>) -> usize {
        match attributes.iter().position(|a| a == name) {
            Some(i) => i,
            None => {
                attributes.push(name.to_string());
                attributes.len() - 1
            }
        }
    }
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = line.split('#').next().unwrap_or("");
        for entry in line.split(';') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (head, rest) = match entry.find('<') {
                Some(i) => (&entry[..i], &entry[i + 1..]),
                None => return Err(Error::parse(ln, format!("missing `< support >` in `{entry}`"))),
            };
            if !head.trim().is_empty() && head.trim().parse::<usize>().is_err() {
                return Err(Error::parse(ln, format!("bad implication number `{}`", head.trim())));
            }
            let (support, body) = rest.split_once('>').ok_or_else(|| Error::parse(ln, "unclosed `<`"))?;
            let support: usize = support
                .trim()
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad support `{}`", support.trim())))?;
            let (premise, conclusion) = ["==>", "⟹", "=>"]
                .iter()
                .find_map(|arrow| body.split_once(arrow))
                .ok_or_else(|| Error::parse(ln, "missing `==>`"))?;
            let premise: Vec<usize> = premise.split_whitespace().map(|n| intern(n, &mut attributes)).collect();
            let conclusion: Vec<usize> = conclusion
                .split_whitespace()
                .map(|n| intern(n, &mut attributes))
                .collect();
            raw.push((premise, conclusion, support));
        }
    }
    let width = attributes.len();
    let set = |ix: &[usize]| {
        let mut s = FixedBitSet::with_capacity(width);
        s.extend(ix.iter().copied());
        s
    };
    let implications = raw
        .iter()
        .map(|(p, c, support)| {
            let premise = set(p);
            let mut conclusion = set(c);
            conclusion.difference_with(&premise);
            Implication {
                premise,
                conclusion,
                support: *support,
            }
        })
        .collect();
    Ok(ParsedImplications {
        attributes,
        implications,
    })
}
