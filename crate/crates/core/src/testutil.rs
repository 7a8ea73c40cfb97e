use proptest::prelude::*;

use crate::sgraph::{Arc, Sign, SignedDigraph};

/// Random signed digraphs on 1..=max_n vertices, parallel opposite arcs allowed.
pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = SignedDigraph> {
    (1usize..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((1..=n, 1..=n, any::<bool>()), 0..=3 * n).prop_map(
            move |arcs| {
                SignedDigraph::new(
                    n,
                    arcs.into_iter().map(|(u, v, p)| {
                        Arc::new(u, v, if p { Sign::Positive } else { Sign::Negative })
                    }),
                )
                .unwrap()
            },
        )
    })
}

/// Graph from `"u v s"` triples separated by commas, e.g. `"1 2 +, 2 1 -"`.
pub(crate) fn graph(n: usize, text: &str) -> SignedDigraph {
    let arcs = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let t: Vec<&str> = s.split_whitespace().collect();
            let sign = Sign::from_symbol(t[2].chars().next().unwrap()).unwrap();
            Arc::new(t[0].parse().unwrap(), t[1].parse().unwrap(), sign)
        });
    SignedDigraph::new(n, arcs).unwrap()
}
