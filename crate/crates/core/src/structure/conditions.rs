//! Graph-only sufficient conditions for uniqueness and existence of fixed
//! points.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sgraph::{Arc, Sign, SignedCycle, SignedDigraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleArc {
    pub cycle: SignedCycle,
    pub arc: Arc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleVertex {
    pub cycle: SignedCycle,
    pub vertex: usize,
}

/// Outcome of a condition quantified over cycles: a witness per cycle when
/// it holds, otherwise the first cycle that has none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witnesses: Vec<W>,
    pub violation: Option<SignedCycle>,
}

impl<W> Verdict<W> {
    fn from_search(cycles: &[SignedCycle], mut find: impl FnMut(&SignedCycle) -> Result<Option<W>>) -> Result<Self> {
        let mut witnesses = Vec::with_capacity(cycles.len());
        for c in cycles {
            match find(c)? {
                Some(w) => witnesses.push(w),
                None => {
                    return Ok(Verdict {
                        holds: false,
                        witnesses,
                        violation: Some(c.clone()),
                    })
                }
            }
        }
        Ok(Verdict {
            holds: true,
            witnesses,
            violation: None,
        })
    }
}

fn has_cycle_of(g: &SignedDigraph, sign: Sign, cap: usize) -> Result<bool> {
    match sign {
        Sign::Negative => Ok(g.has_negative_cycle()),
        Sign::Positive => g.has_cycle_of_sign(Sign::Positive, cap),
    }
}

/// Every cycle of sign `sign` has an arc `a = (u -> v)` such that `G \ a`
/// has a non-trivial initial strong component containing `v` with no cycle
/// of sign `sign`.
///
/// With `Sign::Positive` this is the uniqueness condition (at most one
/// fixed point); with `Sign::Negative` it is the dual existence condition
/// (at least one fixed point).
pub fn isolation_condition(g: &SignedDigraph, sign: Sign, cap: usize) -> Result<Verdict<CycleArc>> {
    let cycles: Vec<SignedCycle> = g
        .enumerate_cycles(cap)?
        .into_iter()
        .filter(|c| c.sign() == sign)
        .collect();
    let mut isolating: HashMap<Arc, bool> = HashMap::new();
    let mut arc_isolates = |a: &Arc| -> Result<bool> {
        if let Some(&ok) = isolating.get(a) {
            return Ok(ok);
        }
        let h = g.delete_arc(a)?;
        let d = h.scc();
        let k = d.component_of(a.target).expect("arc target is a vertex");
        let ok = k.initial && k.non_trivial && !has_cycle_of(&h.induced(&k.vertices)?, sign, cap)?;
        isolating.insert(*a, ok);
        Ok(ok)
    };
    Verdict::from_search(&cycles, |c| {
        for a in c.arcs() {
            if arc_isolates(a)? {
                return Ok(Some(CycleArc {
                    cycle: c.clone(),
                    arc: *a,
                }));
            }
        }
        Ok(None)
    })
}

/// Uniqueness condition through arcs (positive cycles isolated by an arc).
pub fn check_thm_newrule1(g: &SignedDigraph, cap: usize) -> Result<Verdict<CycleArc>> {
    isolation_condition(g, Sign::Positive, cap)
}

/// Existence condition through arcs (negative cycles isolated by an arc).
pub fn check_thm_newrule2(g: &SignedDigraph, cap: usize) -> Result<Verdict<CycleArc>> {
    isolation_condition(g, Sign::Negative, cap)
}

/// Every positive cycle `C` has a vertex `v` with at least two in-arcs,
/// on no other positive cycle, and whose in-neighbours all lie on `C`.
pub fn check_thm_renewrule1(g: &SignedDigraph, cap: usize) -> Result<Verdict<CycleVertex>> {
    let positive: Vec<SignedCycle> = g
        .enumerate_cycles(cap)?
        .into_iter()
        .filter(SignedCycle::is_positive)
        .collect();
    let mut count = vec![0usize; g.order() + 1];
    for c in &positive {
        for v in c.vertices() {
            count[v] += 1;
        }
    }
    Verdict::from_search(&positive, |c| {
        let mut vertices = c.vertices();
        vertices.sort_unstable();
        Ok(vertices
            .into_iter()
            .find(|&v| {
                g.in_degree(v) >= 2
                    && count[v] == 1
                    && g.in_arcs(v).all(|a| c.contains_vertex(a.source))
            })
            .map(|vertex| CycleVertex {
                cycle: c.clone(),
                vertex,
            }))
    })
}

/// Some non-trivial initial component induces a subgraph without positive
/// cycle; then no network on `G` has a fixed point.
pub fn no_fixed_point_condition(g: &SignedDigraph, cap: usize) -> Result<bool> {
    for k in g.scc().initial().filter(|k| k.non_trivial) {
        if !g.induced(&k.vertices)?.has_cycle_of_sign(Sign::Positive, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// No negative cycle and a non-trivial initial component; then every
/// network on `G` has at least two fixed points.
pub fn two_fixed_points_condition(g: &SignedDigraph) -> bool {
    !g.has_negative_cycle() && g.scc().initial().any(|k| k.non_trivial)
}

/// For `G` with exactly one negative cycle, an arc of that cycle lying on
/// no positive cycle. `None` would contradict the lemma guaranteeing one.
pub fn unique_negative_cycle_arc(g: &SignedDigraph, cap: usize) -> Result<Option<Arc>> {
    let cycles = g.enumerate_cycles(cap)?;
    let negative: Vec<&SignedCycle> = cycles.iter().filter(|c| !c.is_positive()).collect();
    let [neg] = negative.as_slice() else {
        return Err(Error::Precondition(format!(
            "expected exactly one negative cycle, found {}",
            negative.len()
        )));
    };
    Ok(neg
        .arcs()
        .iter()
        .find(|a| !cycles.iter().any(|c| c.is_positive() && c.contains_arc(a)))
        .copied())
}

/// Premises of the two classical corollaries: a strong graph with exactly
/// one cycle of sign `sign` and at least one of the opposite sign. For
/// `Positive` every network has at most one fixed point; for `Negative` at
/// least one.
pub fn unique_cycle_premise(g: &SignedDigraph, sign: Sign, cap: usize) -> Result<bool> {
    if !g.is_strong() {
        return Ok(false);
    }
    let cycles = g.enumerate_cycles(cap)?;
    let same = cycles.iter().filter(|c| c.sign() == sign).count();
    Ok(same == 1 && cycles.len() > 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::figure1;
    use crate::sgraph::DEFAULT_CYCLE_CAP as CAP;
    use crate::testutil::graph;

    #[test]
    fn figure1_satisfies_both_uniqueness_conditions() {
        for n in [3, 5, 7, 9] {
            let g = figure1(n).unwrap();
            assert!(check_thm_newrule1(&g, CAP).unwrap().holds, "n = {n}");
            let thm4 = check_thm_renewrule1(&g, CAP).unwrap();
            assert!(thm4.holds);
            assert_eq!(thm4.witnesses.len(), (n - 1) / 2);
        }
    }

    #[test]
    fn figure1_witness_arcs_enter_looped_vertices() {
        let g = figure1(5).unwrap();
        let v = check_thm_newrule1(&g, CAP).unwrap();
        let arcs: Vec<Arc> = v.witnesses.iter().map(|w| w.arc).collect();
        assert_eq!(arcs, vec![Arc::pos(2, 3), Arc::pos(4, 5)]);
    }

    #[test]
    fn vacuous_without_cycles_of_the_sign() {
        let g = graph(2, "1 2 -, 2 1 -");
        assert!(check_thm_newrule2(&g, CAP).unwrap().holds);
        let g = graph(1, "1 1 -");
        assert!(check_thm_newrule1(&g, CAP).unwrap().holds);
        assert!(check_thm_renewrule1(&g, CAP).unwrap().holds);
    }

    #[test]
    fn single_loops_fail() {
        let pos = graph(1, "1 1 +");
        let v = check_thm_newrule1(&pos, CAP).unwrap();
        assert!(!v.holds);
        assert_eq!(v.violation.unwrap().arcs(), &[Arc::pos(1, 1)]);
        assert!(!check_thm_newrule2(&graph(1, "1 1 -"), CAP).unwrap().holds);
    }

    #[test]
    fn doubled_triangle_fails_vertex_condition() {
        let g = graph(3, "1 2 +, 2 3 +, 3 1 +, 1 2 -, 2 3 -, 3 1 -");
        assert!(!check_thm_renewrule1(&g, CAP).unwrap().holds);
    }

    #[test]
    fn sign_flipped_figure1_satisfies_existence_condition() {
        // each triangle made negative through its first arc, loops positive
        let g = graph(5, "1 2 -, 2 3 +, 3 1 +, 2 4 -, 4 5 +, 5 2 +, 3 3 +, 5 5 +");
        assert!(check_thm_newrule2(&g, CAP).unwrap().holds);
        assert!(!check_thm_newrule1(&g, CAP).unwrap().holds);
    }

    #[test]
    fn fixed_point_conditions() {
        assert!(no_fixed_point_condition(&graph(1, "1 1 -"), CAP).unwrap());
        assert!(!no_fixed_point_condition(&graph(1, "1 1 +"), CAP).unwrap());
        assert!(!no_fixed_point_condition(&figure1(5).unwrap(), CAP).unwrap());
        assert!(two_fixed_points_condition(&graph(2, "1 2 +, 2 1 +")));
        assert!(!two_fixed_points_condition(&graph(1, "1 1 -")));
        assert!(!two_fixed_points_condition(&graph(2, "1 2 +")));
    }

    #[test]
    fn unique_negative_cycle_arcs() {
        assert_eq!(unique_negative_cycle_arc(&graph(1, "1 1 -"), CAP).unwrap(), Some(Arc::neg(1, 1)));
        let g = graph(2, "1 1 -, 1 2 +, 2 1 +");
        assert_eq!(unique_negative_cycle_arc(&g, CAP).unwrap(), Some(Arc::neg(1, 1)));
        assert!(unique_negative_cycle_arc(&figure1(5).unwrap(), CAP).is_err());
    }

    #[test]
    fn unique_cycle_premises() {
        let g = graph(2, "1 1 -, 1 2 +, 2 1 +");
        assert!(unique_cycle_premise(&g, Sign::Positive, CAP).unwrap());
        assert!(unique_cycle_premise(&g, Sign::Negative, CAP).unwrap());
        assert!(!unique_cycle_premise(&graph(1, "1 1 -"), Sign::Negative, CAP).unwrap());
    }
}
