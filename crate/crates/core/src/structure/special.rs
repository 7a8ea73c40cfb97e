//! Special arcs of positive cycles.
//!
//! An arc `a = (u -> v)` of a positive cycle `C` is special when, in
//! `G \ a`, (i) `v` has an in-arc, (ii) `v` lies on no positive cycle, and
//! (iii) every path to `v` from a source or a positive cycle meets
//! `C \ v`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sgraph::{Arc, Sign, SignedCycle, SignedDigraph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialCondition {
    I,
    Ii,
    Iii,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialArcVerdict {
    pub arc: Arc,
    pub holds: bool,
    /// First failed condition in the order (i), (ii), (iii).
    pub failed_condition: Option<SpecialCondition>,
}

// Everything about `G \ a` that does not depend on the cycle.
struct ArcContext {
    without: SignedDigraph,
    has_in_arc: bool,
    on_positive_cycle: bool,
    // sources and positive-cycle vertices of `G \ a`
    starts: Vec<usize>,
}

impl ArcContext {
    fn new(g: &SignedDigraph, a: &Arc, cap: usize) -> Result<Self> {
        let without = g.delete_arc(a)?;
        let v = a.target;
        let positive: VertexSet = without.vertices_on_cycles_of_sign(Sign::Positive, cap)?;
        let mut starts: VertexSet = without.sources();
        starts.extend(positive.iter().copied());
        Ok(ArcContext {
            has_in_arc: without.in_degree(v) > 0,
            on_positive_cycle: positive.contains(&v),
            starts: starts.into_iter().collect(),
            without,
        })
    }

    fn verdict(&self, c: &SignedCycle, a: &Arc) -> SpecialArcVerdict {
        let v = a.target;
        let failed = if !self.has_in_arc {
            Some(SpecialCondition::I)
        } else if self.on_positive_cycle {
            Some(SpecialCondition::Ii)
        } else {
            let forbidden: Vec<usize> = c.vertices().into_iter().filter(|&w| w != v).collect();
            let reached = self
                .without
                .reachable(&self.starts, &forbidden, v)
                .expect("cycle vertices are valid and v is not forbidden");
            reached.then_some(SpecialCondition::Iii)
        };
        SpecialArcVerdict {
            arc: *a,
            holds: failed.is_none(),
            failed_condition: failed,
        }
    }
}

fn check_cycle(g: &SignedDigraph, c: &SignedCycle) -> Result<()> {
    if !c.is_positive() {
        return Err(Error::NotPositiveCycle);
    }
    if let Some(a) = c.arcs().iter().find(|a| !g.has_arc(a)) {
        return Err(Error::ArcAbsent(*a));
    }
    Ok(())
}

/// Whether `a` is a special arc of the positive cycle `c` of `g`.
pub fn is_special_arc(
    g: &SignedDigraph,
    c: &SignedCycle,
    a: &Arc,
    cap: usize,
) -> Result<SpecialArcVerdict> {
    check_cycle(g, c)?;
    if !c.contains_arc(a) {
        return Err(Error::ArcNotInCycle(*a));
    }
    Ok(ArcContext::new(g, a, cap)?.verdict(c, a))
}

/// Special-arc queries against one graph, with the per-arc work shared
/// across cycles.
pub struct SpecialArcs<'g> {
    graph: &'g SignedDigraph,
    positive_cycles: Vec<SignedCycle>,
    contexts: HashMap<Arc, ArcContext>,
}

impl<'g> SpecialArcs<'g> {
    pub fn new(graph: &'g SignedDigraph, cap: usize) -> Result<Self> {
        let positive_cycles: Vec<SignedCycle> = graph
            .enumerate_cycles(cap)?
            .into_iter()
            .filter(SignedCycle::is_positive)
            .collect();
        let mut contexts = HashMap::new();
        for c in &positive_cycles {
            for a in c.arcs() {
                if !contexts.contains_key(a) {
                    contexts.insert(*a, ArcContext::new(graph, a, cap)?);
                }
            }
        }
        Ok(SpecialArcs {
            graph,
            positive_cycles,
            contexts,
        })
    }

    pub fn graph(&self) -> &SignedDigraph {
        self.graph
    }

    /// Positive cycles of the graph, in canonical order.
    pub fn positive_cycles(&self) -> &[SignedCycle] {
        &self.positive_cycles
    }

    /// Verdicts for every arc of `c`, in cycle order.
    pub fn verdicts(&self, c: &SignedCycle) -> Result<Vec<SpecialArcVerdict>> {
        check_cycle(self.graph, c)?;
        Ok(c
            .arcs()
            .iter()
            .map(|a| self.contexts[a].verdict(c, a))
            .collect())
    }

    /// First special arc of `c` in cycle order.
    pub fn special_arc(&self, c: &SignedCycle) -> Result<Option<Arc>> {
        Ok(self
            .verdicts(c)?
            .into_iter()
            .find(|v| v.holds)
            .map(|v| v.arc))
    }

    /// Positive cycles having no special arc.
    pub fn cycles_without_special_arc(&self) -> impl Iterator<Item = &SignedCycle> + '_ {
        self.positive_cycles.iter().filter(|c| {
            c.arcs()
                .iter()
                .all(|a| !self.contexts[a].verdict(c, a).holds)
        })
    }

    pub fn every_cycle_has_special_arc(&self) -> bool {
        self.cycles_without_special_arc().next().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::figure1;
    use crate::sgraph::DEFAULT_CYCLE_CAP;
    use crate::testutil::graph;

    fn triangle() -> SignedCycle {
        SignedCycle::new(vec![Arc::pos(1, 2), Arc::pos(2, 3), Arc::pos(3, 1)]).unwrap()
    }

    #[test]
    fn figure1_arc_into_looped_vertex_is_special() {
        let g = figure1(5).unwrap();
        let v = is_special_arc(&g, &triangle(), &Arc::pos(2, 3), DEFAULT_CYCLE_CAP).unwrap();
        assert!(v.holds);
        assert_eq!(v.failed_condition, None);
    }

    #[test]
    fn figure1_arc_into_vertex_one_fails_i() {
        let g = figure1(5).unwrap();
        let v = is_special_arc(&g, &triangle(), &Arc::pos(3, 1), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.failed_condition, Some(SpecialCondition::I));
    }

    #[test]
    fn positive_loop_fails_i() {
        let g = graph(1, "1 1 +");
        let c = SignedCycle::new(vec![Arc::pos(1, 1)]).unwrap();
        let v = is_special_arc(&g, &c, &Arc::pos(1, 1), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.failed_condition, Some(SpecialCondition::I));
    }

    #[test]
    fn second_positive_cycle_through_v_fails_ii() {
        // 2 keeps the positive loop after 1->2 is removed
        let g = graph(2, "1 2 +, 2 1 +, 2 2 +");
        let c = SignedCycle::new(vec![Arc::pos(1, 2), Arc::pos(2, 1)]).unwrap();
        let v = is_special_arc(&g, &c, &Arc::pos(1, 2), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.failed_condition, Some(SpecialCondition::Ii));
    }

    #[test]
    fn path_from_a_source_avoiding_the_cycle_fails_iii() {
        // 3 is a source feeding 2 directly
        let g = graph(3, "1 2 +, 2 1 +, 3 2 +");
        let c = SignedCycle::new(vec![Arc::pos(1, 2), Arc::pos(2, 1)]).unwrap();
        let v = is_special_arc(&g, &c, &Arc::pos(1, 2), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(v.failed_condition, Some(SpecialCondition::Iii));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = figure1(5).unwrap();
        let neg = SignedCycle::new(vec![Arc::neg(3, 3)]).unwrap();
        assert!(is_special_arc(&g, &neg, &Arc::neg(3, 3), DEFAULT_CYCLE_CAP).is_err());
        assert!(is_special_arc(&g, &triangle(), &Arc::pos(2, 4), DEFAULT_CYCLE_CAP).is_err());
    }

    #[test]
    fn shared_oracle_agrees_with_single_queries() {
        let g = figure1(7).unwrap();
        let oracle = SpecialArcs::new(&g, DEFAULT_CYCLE_CAP).unwrap();
        for c in oracle.positive_cycles() {
            for (verdict, a) in oracle.verdicts(c).unwrap().iter().zip(c.arcs()) {
                assert_eq!(verdict, &is_special_arc(&g, c, a, DEFAULT_CYCLE_CAP).unwrap());
            }
        }
        assert!(oracle.every_cycle_has_special_arc());
    }
}
