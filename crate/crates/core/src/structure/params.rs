//! Exact parameters: `tau+`, `tau~+`, `g+`, `g~+`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::special::SpecialArcs;
use crate::error::{Error, Result};
use crate::sgraph::{CycleLength, Sign, SignedDigraph};

/// A minimum vertex set, found first in order of size then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub size: usize,
    pub vertices: Vec<usize>,
}

fn check_order(g: &SignedDigraph, max_order: usize) -> Result<()> {
    if g.vertex_count() > max_order {
        return Err(Error::LimitExceeded {
            what: "vertices for subset search",
            limit: max_order,
            actual: g.vertex_count(),
        });
    }
    Ok(())
}

// First subset of `candidates` (by size, then lexicographic) accepted by
// `accept`, trying sizes up to `max_size`.
fn first_subset(
    candidates: &[usize],
    max_size: usize,
    mut accept: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<Option<Transversal>> {
    for size in 0..=max_size.min(candidates.len()) {
        for subset in candidates.iter().copied().combinations(size) {
            if accept(&subset)? {
                return Ok(Some(Transversal {
                    size,
                    vertices: subset,
                }));
            }
        }
    }
    Ok(None)
}

/// Minimum number of vertices whose deletion leaves no positive cycle.
pub fn tau_plus(g: &SignedDigraph, max_order: usize, cap: usize) -> Result<Transversal> {
    check_order(g, max_order)?;
    // A minimum set only uses vertices lying on positive cycles.
    let candidates: Vec<usize> = g
        .vertices_on_cycles_of_sign(Sign::Positive, cap)?
        .into_iter()
        .collect();
    let found = first_subset(&candidates, candidates.len(), |s| {
        Ok(!g.delete_vertices(s)?.has_cycle_of_sign(Sign::Positive, cap)?)
    })?;
    Ok(found.expect("deleting every candidate removes all positive cycles"))
}

/// Minimum size of `I` such that every positive cycle of `G^I` has a
/// special arc in `G^I`.
pub fn tau_tilde_plus(g: &SignedDigraph, max_order: usize, cap: usize) -> Result<Transversal> {
    let upper = tau_plus(g, max_order, cap)?;
    tau_tilde_plus_below(g, &upper, cap)
}

// `upper` is a positive-cycle transversal: in `G^upper` no cycle passes
// through `upper`, so the search stops at its size.
pub(crate) fn tau_tilde_plus_below(
    g: &SignedDigraph,
    upper: &Transversal,
    cap: usize,
) -> Result<Transversal> {
    let vertices: Vec<usize> = g.vertices().collect();
    let found = first_subset(&vertices, upper.size, |s| {
        let h = g.remove_incoming(s)?;
        Ok(SpecialArcs::new(&h, cap)?.every_cycle_has_special_arc())
    })?;
    Ok(found.unwrap_or_else(|| upper.clone()))
}

/// Length of a shortest positive cycle.
pub fn g_plus(g: &SignedDigraph, cap: usize) -> Result<CycleLength> {
    g.shortest_cycle_of_sign(Sign::Positive, cap)
}

/// Length of a shortest positive cycle without special arc.
pub fn g_tilde_plus(g: &SignedDigraph, cap: usize) -> Result<CycleLength> {
    Ok(g_tilde_from(&SpecialArcs::new(g, cap)?))
}

pub(crate) fn g_tilde_from(oracle: &SpecialArcs<'_>) -> CycleLength {
    oracle.cycles_without_special_arc().map(|c| c.len()).min().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::figure1;
    use crate::sgraph::DEFAULT_CYCLE_CAP as CAP;
    use crate::testutil::{arb_graph, graph};
    use proptest::prelude::*;

    #[test]
    fn figure1_parameters() {
        for n in [3, 5, 7, 9, 11] {
            let g = figure1(n).unwrap();
            assert_eq!(tau_plus(&g, 15, CAP).unwrap().size, (n - 1).div_ceil(4), "n = {n}");
            assert_eq!(tau_tilde_plus(&g, 15, CAP).unwrap().size, 0);
            assert_eq!(g_plus(&g, CAP).unwrap(), CycleLength::Finite(3));
            assert_eq!(g_tilde_plus(&g, CAP).unwrap(), CycleLength::Infinite);
        }
    }

    #[test]
    fn loops_and_acyclic_graphs() {
        let pos = graph(1, "1 1 +");
        assert_eq!(tau_plus(&pos, 15, CAP).unwrap().vertices, vec![1]);
        assert_eq!(tau_tilde_plus(&pos, 15, CAP).unwrap().size, 1);
        assert_eq!(g_plus(&pos, CAP).unwrap(), CycleLength::Finite(1));
        assert_eq!(g_tilde_plus(&pos, CAP).unwrap(), CycleLength::Finite(1));
        let path = graph(2, "1 2 -");
        assert_eq!(tau_plus(&path, 15, CAP).unwrap().size, 0);
        assert_eq!(g_plus(&path, CAP).unwrap(), CycleLength::Infinite);
        assert_eq!(g_tilde_plus(&path, CAP).unwrap(), CycleLength::Infinite);
    }

    #[test]
    fn order_limit_is_enforced() {
        let g = figure1(5).unwrap();
        assert!(matches!(tau_plus(&g, 4, CAP), Err(Error::LimitExceeded { .. })));
    }

    proptest! {
        #[test]
        fn tilde_parameters_improve_plain_ones(g in arb_graph(5)) {
            let tau = tau_plus(&g, 15, CAP).unwrap();
            let tilde = tau_tilde_plus(&g, 15, CAP).unwrap();
            prop_assert!(tilde.size <= tau.size);
            prop_assert!(g_plus(&g, CAP).unwrap() <= g_tilde_plus(&g, CAP).unwrap());
            let rest = g.delete_vertices(&tau.vertices).unwrap();
            prop_assert!(!rest.has_positive_cycle(CAP).unwrap());
        }
    }
}
