//! Format and canonical-labeling properties.

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use udg_core::canon::canonical_form;
use udg_core::graph::Graph;
use udg_core::{emit_graph6, parse_graph6};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let bits = if n < 2 { 0 } else { n * (n - 1) / 2 };
            (Just(n), proptest::collection::vec(any::<bool>(), bits))
        })
        .prop_map(|(n, bits)| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just(()).prop_perturb(move |_, mut rng| {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            p.swap(i, j);
        }
        p
    })
}

proptest! {
    #[test]
    fn roundtrip_parse_emit(g in arb_graph(10)) {
        let code = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&code).unwrap(), g);
    }

    #[test]
    fn canonical_form_is_permutation_invariant(g in arb_graph(9)) {
        let code = canonical_form(&g);
        let n = g.vertex_count();
        if n >= 2 {
            // one hundred relabelings per sampled graph
            let runner = arb_perm(n);
            let mut test_rng = proptest::test_runner::TestRunner::deterministic();
            for _ in 0..100 {
                let p = runner.new_tree(&mut test_rng).unwrap().current();
                prop_assert_eq!(canonical_form(&g.permuted(&p)), code.clone());
            }
        }
        // the code decodes to an isomorphic graph (same canonical form)
        prop_assert_eq!(canonical_form(&code.decode()), code);
    }

    #[test]
    fn emitted_codes_reparse_after_canonicalization(g in arb_graph(10)) {
        let canon = canonical_form(&g).decode();
        prop_assert_eq!(canon.vertex_count(), g.vertex_count());
        prop_assert_eq!(canon.edge_count(), g.edge_count());
        prop_assert_eq!(canon.degree_sequence(), g.degree_sequence());
    }
}
