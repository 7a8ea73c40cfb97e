//! Two-colourings: states `x` with `G(x) = G`.
//!
//! Every arc is read as an undirected constraint (positive: equal colours,
//! negative: different colours) and the constraints are propagated breadth
//! first. A conflict closes a negative cycle of the symmetrised graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Arc, Sign, SignedCycle, SignedDigraph};
use crate::state::BitState;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoColoring {
    /// Smallest vertex of each connected component of `G*` gets colour 0.
    Coloring(BitState),
    /// A negative cycle of `G*` witnessing that no colouring exists.
    NegativeCycle(SignedCycle),
}

impl TwoColoring {
    pub fn coloring(&self) -> Option<&BitState> {
        match self {
            TwoColoring::Coloring(x) => Some(x),
            TwoColoring::NegativeCycle(_) => None,
        }
    }

    pub fn is_colorable(&self) -> bool {
        self.coloring().is_some()
    }
}

struct Conflict {
    from: usize,
    to: usize,
    sign: Sign,
}

struct Propagation {
    color: Vec<bool>,
    // (parent, sign of the tree edge); parent 0 marks a root
    parent: Vec<(usize, Sign)>,
}

fn propagate(
    g: &SignedDigraph,
    keep: impl Fn(&Arc) -> bool,
) -> Result<Propagation, (Propagation, Conflict)> {
    let n = g.order();
    let mut p = Propagation {
        color: vec![false; n + 1],
        parent: vec![(0, Sign::Positive); n + 1],
    };
    let mut seen = vec![false; n + 1];
    let mut queue = VecDeque::new();
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // neighbours of u in G*: out-arcs and reversed in-arcs
            let out = g.out_arcs(u).iter().map(|a| (a, a.target));
            let inc = g.in_arcs(u).map(|a| (a, a.source));
            for (a, w) in out.chain(inc) {
                if !keep(a) {
                    continue;
                }
                let want = p.color[u] ^ !a.sign.is_positive();
                if !seen[w] {
                    seen[w] = true;
                    p.color[w] = want;
                    p.parent[w] = (u, a.sign);
                    queue.push_back(w);
                } else if p.color[w] != want {
                    let conflict = Conflict {
                        from: u,
                        to: w,
                        sign: a.sign,
                    };
                    return Err((p, conflict));
                }
            }
        }
    }
    Ok(p)
}

pub(crate) fn is_balanced_where(g: &SignedDigraph, keep: impl Fn(&Arc) -> bool) -> bool {
    propagate(g, keep).is_ok()
}

/// Two-colouring of `g`, or a negative cycle of `g.symmetrize()` proving
/// that none exists.
pub fn two_coloring(g: &SignedDigraph) -> TwoColoring {
    match propagate(g, |_| true) {
        Ok(p) => TwoColoring::Coloring(BitState::from_bits(p.color[1..].to_vec())),
        Err((p, c)) => TwoColoring::NegativeCycle(witness(&p, &c)),
    }
}

fn ancestors(p: &Propagation, v: usize) -> Vec<usize> {
    let mut path = vec![v];
    let mut cur = v;
    while p.parent[cur].0 != 0 {
        cur = p.parent[cur].0;
        path.push(cur);
    }
    path
}

// Tree path lca -> .. -> from, the conflicting edge from -> to, then the
// tree path to -> .. -> lca. Tree paths from the lca are disjoint, so this
// is a simple cycle of G*, and its sign is negative by the conflict.
fn witness(p: &Propagation, c: &Conflict) -> SignedCycle {
    if c.from == c.to {
        return SignedCycle::new(vec![Arc::new(c.from, c.to, c.sign)])
            .expect("a loop is a cycle");
    }
    let up_from = ancestors(p, c.from);
    let up_to = ancestors(p, c.to);
    let lca = *up_from
        .iter()
        .find(|v| up_to.contains(v))
        .expect("conflicting vertices share a BFS root");
    let mut arcs = Vec::new();
    let down: Vec<usize> = up_from.iter().take_while(|&&v| v != lca).copied().collect();
    let mut prev = lca;
    for &v in down.iter().rev() {
        arcs.push(Arc::new(prev, v, p.parent[v].1));
        prev = v;
    }
    arcs.push(Arc::new(c.from, c.to, c.sign));
    for &v in up_to.iter().take_while(|&&v| v != lca) {
        let (parent, sign) = p.parent[v];
        arcs.push(Arc::new(v, parent, sign));
    }
    SignedCycle::new(arcs).expect("witness walk is a simple cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgraph::cycles::DEFAULT_CYCLE_CAP;
    use proptest::prelude::*;

    #[test]
    fn negative_loop_has_no_coloring() {
        let g = SignedDigraph::new(1, [Arc::neg(1, 1)]).unwrap();
        match two_coloring(&g) {
            TwoColoring::NegativeCycle(c) => assert_eq!(c.arcs(), &[Arc::neg(1, 1)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn positive_two_cycle_colors_zero() {
        let g = SignedDigraph::new(2, [Arc::pos(1, 2), Arc::pos(2, 1)]).unwrap();
        assert_eq!(two_coloring(&g).coloring().unwrap().to_string(), "00");
    }

    #[test]
    fn odd_constraint_triangle() {
        let g = SignedDigraph::new(3, [Arc::pos(1, 2), Arc::pos(2, 3), Arc::neg(3, 1)]).unwrap();
        let TwoColoring::NegativeCycle(c) = two_coloring(&g) else {
            panic!("expected a witness");
        };
        assert_eq!(c.sign(), Sign::Negative);
        assert!(g.symmetrize().has_arc(&c.arcs()[0]));
    }

    #[test]
    fn parallel_opposite_arcs_conflict() {
        let g = SignedDigraph::new(2, [Arc::pos(1, 2), Arc::neg(1, 2)]).unwrap();
        let TwoColoring::NegativeCycle(c) = two_coloring(&g) else {
            panic!("expected a witness");
        };
        assert_eq!(c.len(), 2);
        assert_eq!(c.sign(), Sign::Negative);
    }

    proptest! {
        #[test]
        fn coloring_iff_symmetrized_graph_balanced(g in crate::testutil::arb_graph(6)) {
            let star = g.symmetrize();
            let oracle = star
                .enumerate_cycles(DEFAULT_CYCLE_CAP)
                .unwrap()
                .iter()
                .any(|c| !c.is_positive());
            match two_coloring(&g) {
                TwoColoring::Coloring(x) => {
                    prop_assert!(!oracle);
                    prop_assert_eq!(g.consistent_subgraph(&x).unwrap(), g.clone());
                    prop_assert_eq!(g.consistent_subgraph(&x.complement()).unwrap(), g.clone());
                }
                TwoColoring::NegativeCycle(c) => {
                    prop_assert!(oracle);
                    prop_assert_eq!(c.sign(), Sign::Negative);
                    prop_assert!(c.arcs().iter().all(|a| star.has_arc(a)));
                }
            }
        }
    }
}
