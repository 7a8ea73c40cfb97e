//! Per-network checks of the dynamical theorems.

use serde::{Deserialize, Serialize};

use super::BooleanNetwork;
use crate::error::{Error, Result};
use crate::sgraph::{SignedCycle, SignedDigraph};
use crate::state::BitState;
use crate::structure::SpecialArcs;

/// First cycle of `cycles` on whose every vertex `x` and `y` differ.
pub fn disagreeing_cycle<'c>(
    cycles: impl IntoIterator<Item = &'c SignedCycle>,
    x: &BitState,
    y: &BitState,
) -> Option<&'c SignedCycle> {
    cycles
        .into_iter()
        .find(|c| c.vertices().into_iter().all(|v| x.get(v) != y.get(v)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum StrongVerdict {
    /// The premises fail for `(G, f)`.
    NotApplicable,
    /// `x` and its complement are both fixed.
    Holds { x: BitState },
    /// Premises hold but no antipodal pair of fixed points exists.
    Counterexample,
}

/// For `G` strong with exactly one negative cycle, at least one positive
/// cycle, and no arc of the negative cycle canalized by `f`, looks for a
/// fixed point `x` whose complement is also fixed.
pub fn check_theorem_strong_instance(
    g: &SignedDigraph,
    f: &BooleanNetwork,
    cap: usize,
) -> Result<StrongVerdict> {
    if f.interaction_graph() != *g {
        return Err(Error::GraphMismatch);
    }
    if !g.is_strong() {
        return Ok(StrongVerdict::NotApplicable);
    }
    let cycles = g.enumerate_cycles(cap)?;
    let negative: Vec<&SignedCycle> = cycles.iter().filter(|c| !c.is_positive()).collect();
    let [neg] = negative.as_slice() else {
        return Ok(StrongVerdict::NotApplicable);
    };
    if cycles.len() == 1 {
        return Ok(StrongVerdict::NotApplicable);
    }
    for a in neg.arcs() {
        if f.is_canalized(a)? {
            return Ok(StrongVerdict::NotApplicable);
        }
    }
    let n = f.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let fixed = f.fixed_points_packed()?;
    // sorted, so a binary search finds complements
    Ok(fixed
        .iter()
        .find(|&&x| fixed.binary_search(&(x ^ all)).is_ok())
        .map_or(StrongVerdict::Counterexample, |&x| StrongVerdict::Holds {
            x: BitState::from_index(n, x),
        }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub x: BitState,
    pub y: BitState,
    /// A positive cycle without special arc on which `x` and `y` differ.
    pub cycle: Option<SignedCycle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub holds: bool,
    pub pairs: Vec<PairWitness>,
}

/// Checks that every pair of distinct fixed points of `f` differs on all
/// of some positive cycle of `G(f)` without special arc.
pub fn verify_uniqueness_theorem(f: &BooleanNetwork, cap: usize) -> Result<UniquenessReport> {
    let fixed = f.fixed_points()?;
    if fixed.len() < 2 {
        return Ok(UniquenessReport {
            holds: true,
            pairs: Vec::new(),
        });
    }
    let g = f.interaction_graph();
    verify_uniqueness_with(&fixed, &SpecialArcs::new(&g, cap)?)
}

/// As [`verify_uniqueness_theorem`] for the given fixed points, with the
/// special arcs of the interaction graph already computed.
pub fn verify_uniqueness_with(fixed: &[BitState], oracle: &SpecialArcs<'_>) -> Result<UniquenessReport> {
    let plain: Vec<&SignedCycle> = oracle.cycles_without_special_arc().collect();
    let mut pairs = Vec::new();
    for (i, x) in fixed.iter().enumerate() {
        for y in &fixed[i + 1..] {
            pairs.push(PairWitness {
                x: x.clone(),
                y: y.clone(),
                cycle: disagreeing_cycle(plain.iter().copied(), x, y).cloned(),
            });
        }
    }
    Ok(UniquenessReport {
        holds: pairs.iter().all(|p| p.cycle.is_some()),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolnet::{enumerate_consistent, LocalFunction};
    use crate::sgraph::DEFAULT_CYCLE_CAP as CAP;
    use crate::testutil::graph;

    fn swap() -> BooleanNetwork {
        BooleanNetwork::new(vec![LocalFunction::copy_of(2), LocalFunction::copy_of(1)]).unwrap()
    }

    #[test]
    fn positive_two_cycle_is_not_applicable() {
        let g = graph(2, "1 2 +, 2 1 +");
        assert_eq!(
            check_theorem_strong_instance(&g, &swap(), CAP).unwrap(),
            StrongVerdict::NotApplicable
        );
    }

    #[test]
    fn mismatched_network_is_an_error() {
        let g = graph(2, "1 2 +");
        assert_eq!(
            check_theorem_strong_instance(&g, &swap(), CAP),
            Err(Error::GraphMismatch)
        );
    }

    #[test]
    fn antipodal_pair_on_small_instances() {
        // a negative loop and two positive 2-cycles through 1; the majority
        // of three inputs canalizes none of them
        let g = graph(3, "1 1 -, 2 1 +, 3 1 +, 1 2 +, 1 3 +");
        let mut applicable = 0;
        for f in enumerate_consistent(&g, 4).unwrap() {
            match check_theorem_strong_instance(&g, &f, CAP).unwrap() {
                StrongVerdict::Holds { x } => {
                    applicable += 1;
                    assert_eq!(f.eval(&x).unwrap(), x);
                    assert_eq!(f.eval(&x.complement()).unwrap(), x.complement());
                }
                StrongVerdict::NotApplicable => {}
                StrongVerdict::Counterexample => panic!("counterexample {f}"),
            }
        }
        assert!(applicable > 0);
    }

    #[test]
    fn swap_pair_has_the_two_cycle_as_witness() {
        let r = verify_uniqueness_theorem(&swap(), CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].x.to_string(), "00");
        assert_eq!(r.pairs[0].y.to_string(), "11");
        assert_eq!(r.pairs[0].cycle.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn at_most_one_fixed_point_is_vacuous() {
        let f = BooleanNetwork::new(vec![LocalFunction::negation_of(1)]).unwrap();
        assert_eq!(
            verify_uniqueness_theorem(&f, CAP).unwrap(),
            UniquenessReport {
                holds: true,
                pairs: Vec::new()
            }
        );
    }
}
