use fixedbitset::FixedBitSet;

use super::context::{AttributeSet, FormalContext};

/// A pair `(A, B)` with `A' = B` and `B' = A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: FixedBitSet,
    pub intent: AttributeSet,
}

impl FormalConcept {
    pub fn is_closed_in(&self, ctx: &FormalContext) -> bool {
        ctx.intent(&self.extent) == self.intent && ctx.extent(&self.intent) == self.extent
    }
}

/// The lectically next set after `current` that is closed under `closure`,
/// over the ground set `0..width`. Position 0 is the most significant.
pub fn next_closure<F>(current: &FixedBitSet, width: usize, closure: F) -> Option<FixedBitSet>
where
    F: Fn(&FixedBitSet) -> FixedBitSet,
{
    let mut prefix = FixedBitSet::with_capacity(width);
    prefix.extend(current.ones().filter(|&i| i < width));
    for i in (0..width).rev() {
        if prefix.contains(i) {
            prefix.set(i, false);
            continue;
        }
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let closed = closure(&candidate);
        // Accept only if closing added nothing before position `i`.
        if closed.ones().take_while(|&j| j < i).all(|j| prefix.contains(j)) {
            return Some(closed);
        }
    }
    None
}

/// All concepts of `ctx`, with intents in lectic order (so the concept with
/// the smallest intent comes first).
pub fn enumerate_concepts(ctx: &FormalContext) -> Vec<FormalConcept> {
    let m = ctx.n_attributes();
    let mut intent = ctx.closure(&ctx.empty_attributes());
    let mut out = Vec::new();
    loop {
        out.push(FormalConcept {
            extent: ctx.extent(&intent),
            intent: intent.clone(),
        });
        match next_closure(&intent, m, |y| ctx.closure(y)) {
            Some(next) => intent = next,
            None => return out,
        }
    }
}
