mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use roughfca::fca::{
    build_lattice, closure_under, enumerate_concepts, implication_basis, parse_implications, render_implications,
    FormalContext,
};

fn incidence() -> impl Strategy<Value = (Vec<Vec<bool>>, usize)> {
    (0usize..=8, 0usize..=7).prop_flat_map(|(n, m)| {
        (
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), n),
            Just(m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn concepts_match_the_oracle((inc, m) in incidence()) {
        let ctx = context_from(&inc, m);
        let got: BTreeSet<(Vec<usize>, Vec<usize>)> = enumerate_concepts(&ctx)
            .iter()
            .map(|c| (c.extent.ones().collect(), c.intent.ones().collect()))
            .collect();
        prop_assert_eq!(got, concepts_oracle(&inc, m));
    }

    #[test]
    fn concepts_come_in_lectic_order((inc, m) in incidence()) {
        let ctx = context_from(&inc, m);
        let intents: Vec<Vec<bool>> = enumerate_concepts(&ctx)
            .iter()
            .map(|c| (0..m).map(|a| c.intent.contains(a)).collect())
            .collect();
        // Lectic order on indicator vectors is plain lexicographic order.
        prop_assert!(intents.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn derivation_operators_form_a_galois_connection((inc, m) in incidence(), xs in any::<u16>(), ys in any::<u16>()) {
        let ctx = context_from(&inc, m);
        let x = bits(ctx.n_objects(), (0..ctx.n_objects()).filter(|&g| xs >> g & 1 == 1));
        let y = bits(m, (0..m).filter(|&a| ys >> a & 1 == 1));
        // X within Y' exactly when Y within X'.
        prop_assert_eq!(x.is_subset(&ctx.extent(&y)), y.is_subset(&ctx.intent(&x)));
        prop_assert_eq!(ctx.intent(&ctx.extent(&ctx.intent(&x))), ctx.intent(&x));
    }

    #[test]
    fn lattice_order_is_extent_inclusion((inc, m) in incidence()) {
        let ctx = context_from(&inc, m);
        let lattice = build_lattice(&ctx, enumerate_concepts(&ctx)).unwrap();
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let (a, b) = (lattice.concept(i), lattice.concept(j));
                prop_assert_eq!(lattice.leq(i, j), a.extent.is_subset(&b.extent));
                prop_assert_eq!(lattice.leq(i, j), b.intent.is_subset(&a.intent));
            }
        }
        for (lo, hi) in lattice.edges() {
            prop_assert!(lattice.upper_covers(lo).contains(&hi));
            prop_assert!(lattice.lower_covers(hi).contains(&lo));
        }
    }

    #[test]
    fn basis_closure_equals_context_closure((inc, m) in incidence()) {
        let ctx = context_from(&inc, m);
        let basis = implication_basis(&ctx);
        for mask in 0u32..1 << m {
            let s = bits(m, mask_members(mask, m));
            prop_assert_eq!(closure_under(&basis, &s), ctx.closure(&s));
        }
        for imp in &basis {
            prop_assert!(imp.holds_in(&ctx));
        }
    }

    #[test]
    fn basis_text_round_trips((inc, m) in incidence()) {
        let ctx = context_from(&inc, m);
        let basis = implication_basis(&ctx);
        let text = render_implications(&basis, ctx.attributes());
        let parsed = parse_implications(&text, ctx.attributes()).unwrap();
        prop_assert_eq!(parsed.implications, basis);
    }

    #[test]
    fn cxt_round_trips((inc, m) in incidence()) {
        let ctx = context_from(&inc, m);
        prop_assert_eq!(FormalContext::from_cxt(&ctx.to_cxt()).unwrap(), ctx);
    }
}
