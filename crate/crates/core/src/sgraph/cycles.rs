//! Directed simple cycles and their signs.
//!
//! Cycles are subgraphs: two cycles through the same vertices but using
//! parallel arcs of different signs are different cycles. Enumeration runs
//! Johnson's circuit search on the underlying digraph and then expands every
//! choice of parallel arcs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{Arc, Sign, SignedDigraph, VertexSet};
use crate::error::{Error, Result};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A simple directed cycle, rotated so that its smallest vertex comes first.
/// A length that may be infinite, such as the girth of a graph with no
/// cycle of the requested kind. `Finite` values order before `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleLength {
    Finite(usize),
    Infinite,
}

impl CycleLength {
    pub fn finite(self) -> Option<usize> {
        match self {
            CycleLength::Finite(l) => Some(l),
            CycleLength::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == CycleLength::Infinite
    }
}

impl From<Option<usize>> for CycleLength {
    fn from(l: Option<usize>) -> Self {
        l.map_or(CycleLength::Infinite, CycleLength::Finite)
    }
}

impl fmt::Display for CycleLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleLength::Finite(l) => write!(f, "{l}"),
            CycleLength::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for CycleLength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(CycleLength::Infinite),
            _ => s
                .parse()
                .map(CycleLength::Finite)
                .map_err(|_| Error::BadParams(format!("`{s}` is neither a length nor `inf`"))),
        }
    }
}

// Serialized as an integer, or the string "inf".
impl Serialize for CycleLength {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CycleLength::Finite(l) => s.serialize_u64(*l as u64),
            CycleLength::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for CycleLength {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(l) => Ok(CycleLength::Finite(l as usize)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCycle {
    arcs: Vec<Arc>,
}

impl SignedCycle {
    /// Validates the arc chain and rotates it into canonical form.
    pub fn new(arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::Precondition("a cycle needs at least one arc".into()));
        }
        let k = arcs.len();
        for i in 0..k {
            if arcs[i].target != arcs[(i + 1) % k].source {
                return Err(Error::Precondition(format!(
                    "arcs {} and {} do not chain",
                    arcs[i],
                    arcs[(i + 1) % k]
                )));
            }
        }
        let mut vs: Vec<usize> = arcs.iter().map(|a| a.source).collect();
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("cycle repeats a vertex".into()));
        }
        Ok(Self::canonical(arcs))
    }

    fn canonical(mut arcs: Vec<Arc>) -> Self {
        let start = arcs
            .iter()
            .enumerate()
            .min_by_key(|(_, a)| a.source)
            .map(|(i, _)| i)
            .unwrap_or(0);
        arcs.rotate_left(start);
        SignedCycle { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Vertices in cycle order, starting with the smallest.
    pub fn vertices(&self) -> Vec<usize> {
        self.arcs.iter().map(|a| a.source).collect()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.negative_arcs())
    }

    pub fn negative_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| !a.sign.is_positive()).count()
    }

    pub fn is_positive(&self) -> bool {
        self.sign().is_positive()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.arcs.iter().any(|a| a.source == v)
    }

    pub fn contains_arc(&self, arc: &Arc) -> bool {
        self.arcs.contains(arc)
    }

    fn key(&self) -> (Vec<usize>, Vec<Sign>) {
        (
            self.vertices(),
            self.arcs.iter().map(|a| a.sign).collect(),
        )
    }
}

impl PartialOrd for SignedCycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on vertex sequences, then on arc signs.
impl Ord for SignedCycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arcs[0].source)?;
        for a in &self.arcs {
            write!(f, " -({})-> {}", a.sign, a.target)?;
        }
        Ok(())
    }
}

/// A directed path without repeated vertices; may be trivial (no arcs).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPath {
    start: usize,
    arcs: Vec<Arc>,
}

impl SignedPath {
    pub fn trivial(v: usize) -> Self {
        SignedPath {
            start: v,
            arcs: Vec::new(),
        }
    }

    pub fn new(arcs: Vec<Arc>) -> Result<Self> {
        let first = arcs
            .first()
            .ok_or_else(|| Error::Precondition("use SignedPath::trivial for empty paths".into()))?;
        if arcs.windows(2).any(|w| w[0].target != w[1].source) {
            return Err(Error::Precondition("path arcs do not chain".into()));
        }
        let mut vs: Vec<usize> = std::iter::once(first.source)
            .chain(arcs.iter().map(|a| a.target))
            .collect();
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("path repeats a vertex".into()));
        }
        Ok(SignedPath {
            start: first.source,
            arcs,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.arcs.last().map_or(self.start, |a| a.target)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.arcs.iter().filter(|a| !a.sign.is_positive()).count())
    }
}

struct Johnson<'g, F> {
    graph: &'g SignedDigraph,
    succ: Vec<Vec<usize>>,
    allowed: Vec<bool>,
    blocked: Vec<bool>,
    b_lists: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
    emitted: usize,
    cap: usize,
    visit: F,
    outcome: Option<Result<()>>,
}

impl<F: FnMut(&SignedCycle) -> ControlFlow<()>> Johnson<'_, F> {
    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                pending.append(&mut self.b_lists[u]);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for i in 0..self.succ[v].len() {
            if self.outcome.is_some() {
                break;
            }
            let w = self.succ[v][i];
            if !self.allowed[w] {
                continue;
            }
            if w == self.start {
                self.emit();
                found = true;
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for i in 0..self.succ[v].len() {
                let w = self.succ[v][i];
                if self.allowed[w] && !self.b_lists[w].contains(&v) {
                    self.b_lists[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    /// Expands the vertex cycle on the stack into its signed variants.
    fn emit(&mut self) {
        let k = self.stack.len();
        let graph = self.graph;
        let choices: Vec<&[Arc]> = (0..k)
            .map(|i| graph.arcs_between(self.stack[i], self.stack[(i + 1) % k]))
            .collect();
        let mut pick = vec![0usize; k];
        loop {
            self.emitted += 1;
            if self.emitted > self.cap {
                self.outcome = Some(Err(Error::CycleCapExceeded { cap: self.cap }));
                return;
            }
            let cycle = SignedCycle {
                arcs: (0..k).map(|i| choices[i][pick[i]]).collect(),
            };
            if (self.visit)(&cycle).is_break() {
                self.outcome = Some(Ok(()));
                return;
            }
            // odometer, last position fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
}

impl SignedDigraph {
    /// Calls `visit` on every simple cycle, in canonical order per start
    /// vertex. Returns `Break` if the visitor stopped early. More than `cap`
    /// cycles is an error, never a silent truncation.
    pub fn visit_cycles<F>(&self, cap: usize, visit: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&SignedCycle) -> ControlFlow<()>,
    {
        let n = self.order();
        let mut succ = vec![Vec::new(); n + 1];
        for v in self.vertices() {
            succ[v] = self.out_neighbors(v);
        }
        let mut j = Johnson {
            graph: self,
            succ,
            allowed: vec![false; n + 1],
            blocked: vec![false; n + 1],
            b_lists: vec![Vec::new(); n + 1],
            stack: Vec::with_capacity(n),
            start: 0,
            emitted: 0,
            cap,
            visit,
            outcome: None,
        };
        for s in self.vertices() {
            let comp = self.component_above(s, &j.succ);
            if comp.len() == 1 && !j.succ[s].contains(&s) {
                continue;
            }
            j.allowed.iter_mut().for_each(|a| *a = false);
            for &v in &comp {
                j.allowed[v] = true;
                j.blocked[v] = false;
                j.b_lists[v].clear();
            }
            j.start = s;
            j.circuit(s);
            match j.outcome.take() {
                None => {}
                Some(Ok(())) => return Ok(ControlFlow::Break(())),
                Some(Err(e)) => return Err(e),
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    // Strong component of `s` in the subgraph induced by vertices >= s.
    fn component_above(&self, s: usize, succ: &[Vec<usize>]) -> Vec<usize> {
        let n = self.order();
        let mut fwd = vec![false; n + 1];
        let mut todo = vec![s];
        fwd[s] = true;
        while let Some(u) = todo.pop() {
            for &w in &succ[u] {
                if w >= s && !fwd[w] {
                    fwd[w] = true;
                    todo.push(w);
                }
            }
        }
        let mut bwd = vec![false; n + 1];
        bwd[s] = true;
        todo.push(s);
        while let Some(u) = todo.pop() {
            for a in self.in_arcs(u) {
                let w = a.source;
                if w >= s && !bwd[w] {
                    bwd[w] = true;
                    todo.push(w);
                }
            }
        }
        (s..=n).filter(|&v| fwd[v] && bwd[v]).collect()
    }

    /// Every simple cycle (loops included) exactly once, sorted
    /// lexicographically by vertex sequence and then by signs.
    pub fn enumerate_cycles(&self, cap: usize) -> Result<Vec<SignedCycle>> {
        let mut out = Vec::new();
        let _ = self.visit_cycles(cap, |c| {
            out.push(c.clone());
            ControlFlow::Continue(())
        })?;
        out.sort();
        Ok(out)
    }

    pub fn has_cycle_of_sign(&self, sign: Sign, cap: usize) -> Result<bool> {
        let flow = self.visit_cycles(cap, |c| {
            if c.sign() == sign {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(flow.is_break())
    }

    pub fn has_positive_cycle(&self, cap: usize) -> Result<bool> {
        self.has_cycle_of_sign(Sign::Positive, cap)
    }

    /// Vertices lying on at least one cycle of the given sign.
    pub fn vertices_on_cycles_of_sign(&self, sign: Sign, cap: usize) -> Result<VertexSet> {
        let mut set = VertexSet::new();
        let _ = self.visit_cycles(cap, |c| {
            if c.sign() == sign {
                set.extend(c.vertices());
            }
            ControlFlow::Continue(())
        })?;
        Ok(set)
    }

    pub fn vertices_on_positive_cycles(&self, cap: usize) -> Result<VertexSet> {
        self.vertices_on_cycles_of_sign(Sign::Positive, cap)
    }

    /// Length of a shortest cycle of the given sign.
    pub fn shortest_cycle_of_sign(&self, sign: Sign, cap: usize) -> Result<CycleLength> {
        let mut best: Option<usize> = None;
        let _ = self.visit_cycles(cap, |c| {
            if c.sign() == sign && best.is_none_or(|b| c.len() < b) {
                best = Some(c.len());
            }
            ControlFlow::Continue(())
        })?;
        Ok(best.into())
    }

    /// Polynomial test: a strong component contains a negative cycle iff the
    /// subgraph it induces admits no two-colouring.
    pub fn has_negative_cycle(&self) -> bool {
        let d = self.scc();
        let comp: Vec<usize> = (1..=self.order())
            .map(|v| d.component_index(v).unwrap_or(usize::MAX))
            .collect();
        !super::balance::is_balanced_where(self, |a| comp[a.source - 1] == comp[a.target - 1])
    }

    /// A negative cycle, found by enumeration inside the first strong
    /// component that has one.
    pub fn negative_cycle(&self, cap: usize) -> Result<Option<SignedCycle>> {
        if !self.has_negative_cycle() {
            return Ok(None);
        }
        for c in self.scc().components.iter().filter(|c| c.non_trivial) {
            let sub = self.induced(&c.vertices)?;
            if !sub.has_negative_cycle() {
                continue;
            }
            let mut found = None;
            let _ = sub.visit_cycles(cap, |cy| {
                if cy.sign() == Sign::Negative {
                    found = Some(cy.clone());
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            return Ok(found);
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::figure1;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    /// Brute-force oracle: extend every simple path from each start vertex
    /// through larger vertices only, closing back at the start.
    fn brute_force_cycles(g: &SignedDigraph) -> Vec<SignedCycle> {
        fn extend(g: &SignedDigraph, start: usize, path: &mut Vec<Arc>, out: &mut Vec<SignedCycle>) {
            let last = path.last().map_or(start, |a| a.target);
            for a in g.out_arcs(last) {
                if a.target == start {
                    let mut arcs = path.clone();
                    arcs.push(*a);
                    out.push(SignedCycle::new(arcs).unwrap());
                } else if a.target > start && !path.iter().any(|p| p.target == a.target) {
                    path.push(*a);
                    extend(g, start, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in g.vertices() {
            extend(g, s, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }

    #[test]
    fn figure1_has_four_cycles() {
        let g = figure1(5).unwrap();
        let cycles = g.enumerate_cycles(DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(cycles.len(), 4);
        let summary: Vec<(Vec<usize>, Sign)> =
            cycles.iter().map(|c| (c.vertices(), c.sign())).collect();
        assert_eq!(
            summary,
            vec![
                (vec![1, 2, 3], Sign::Positive),
                (vec![2, 4, 5], Sign::Positive),
                (vec![3], Sign::Negative),
                (vec![5], Sign::Negative),
            ]
        );
        assert_eq!(cycles, brute_force_cycles(&g));
    }

    #[test]
    fn acyclic_graph_has_no_cycles() {
        let g = SignedDigraph::new(3, [Arc::pos(1, 2), Arc::neg(2, 3), Arc::pos(1, 3)]).unwrap();
        assert!(g.enumerate_cycles(10).unwrap().is_empty());
        assert!(!g.has_negative_cycle());
        assert!(!g.has_positive_cycle(10).unwrap());
    }

    #[test]
    fn two_cycle_with_negative_loop() {
        let g = SignedDigraph::new(2, [Arc::pos(1, 2), Arc::pos(2, 1), Arc::neg(1, 1)]).unwrap();
        let cycles = g.enumerate_cycles(10).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].vertices(), vec![1]);
        assert_eq!(cycles[0].sign(), Sign::Negative);
        assert_eq!(cycles[1].vertices(), vec![1, 2]);
        assert_eq!(cycles[1].sign(), Sign::Positive);
    }

    #[test]
    fn parallel_arcs_give_distinct_cycles() {
        let g = SignedDigraph::new(2, [Arc::pos(1, 2), Arc::neg(1, 2), Arc::pos(2, 1)]).unwrap();
        let cycles = g.enumerate_cycles(10).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].sign(), Sign::Positive);
        assert_eq!(cycles[1].sign(), Sign::Negative);
        assert!(g.has_negative_cycle());
    }

    #[test]
    fn cap_overflow_is_an_error() {
        let g = figure1(5).unwrap();
        assert_eq!(
            g.enumerate_cycles(3),
            Err(Error::CycleCapExceeded { cap: 3 })
        );
        assert_eq!(g.enumerate_cycles(4).unwrap().len(), 4);
    }

    #[test]
    fn negative_cycle_detection_examples() {
        let l = SignedDigraph::new(1, [Arc::neg(1, 1)]).unwrap();
        assert!(l.has_negative_cycle());
        assert_eq!(l.negative_cycle(10).unwrap().unwrap().arcs(), &[Arc::neg(1, 1)]);
        let p = SignedDigraph::new(2, [Arc::pos(1, 2), Arc::pos(2, 1)]).unwrap();
        assert!(!p.has_negative_cycle());
        assert_eq!(p.negative_cycle(10).unwrap(), None);
        assert!(figure1(5).unwrap().has_negative_cycle());
    }

    #[test]
    fn positive_cycle_vertices() {
        let g = figure1(5).unwrap();
        assert!(g.has_positive_cycle(100).unwrap());
        assert_eq!(
            g.vertices_on_positive_cycles(100).unwrap(),
            VertexSet::from([1, 2, 3, 4, 5])
        );
        let l = SignedDigraph::new(1, [Arc::neg(1, 1)]).unwrap();
        assert!(!l.has_positive_cycle(100).unwrap());
        assert!(l.vertices_on_positive_cycles(100).unwrap().is_empty());
        let p = SignedDigraph::new(1, [Arc::pos(1, 1)]).unwrap();
        assert_eq!(p.vertices_on_positive_cycles(100).unwrap(), VertexSet::from([1]));
    }

    #[test]
    fn cycle_validation() {
        assert!(SignedCycle::new(vec![Arc::pos(1, 2)]).is_err());
        assert!(SignedCycle::new(vec![]).is_err());
        let c = SignedCycle::new(vec![Arc::pos(2, 1), Arc::neg(1, 2)]).unwrap();
        assert_eq!(c.vertices(), vec![1, 2]);
        assert_eq!(c.to_string(), "1 -(-)-> 2 -(+)-> 1");
        let p = SignedPath::new(vec![Arc::neg(1, 2), Arc::neg(2, 3)]).unwrap();
        assert_eq!((p.start(), p.end(), p.sign()), (1, 3, Sign::Positive));
        assert!(SignedPath::new(vec![Arc::pos(1, 2), Arc::pos(2, 1)]).is_err());
        assert_eq!(SignedPath::trivial(4).end(), 4);
    }

    proptest! {
        #[test]
        fn enumeration_matches_brute_force(g in arb_graph(6)) {
            let cycles = g.enumerate_cycles(DEFAULT_CYCLE_CAP).unwrap();
            prop_assert_eq!(&cycles, &brute_force_cycles(&g));
            for c in &cycles {
                prop_assert_eq!(c.sign(), Sign::from_parity(c.negative_arcs()));
                prop_assert_eq!(c.vertices()[0], *c.vertices().iter().min().unwrap());
            }
        }

        #[test]
        fn negative_cycle_test_agrees_with_enumeration(g in arb_graph(7)) {
            let by_enum = g.enumerate_cycles(DEFAULT_CYCLE_CAP).unwrap().iter().any(|c| !c.is_positive());
            prop_assert_eq!(g.has_negative_cycle(), by_enum);
            if g.is_strong() {
                prop_assert_eq!(g.symmetrize().has_negative_cycle(), by_enum);
            }
        }

        #[test]
        fn consistent_subgraph_cycles_are_positive(g in arb_graph(6), seed in any::<u64>()) {
            let x = crate::state::BitState::from_index(g.order(), seed & ((1u64 << g.order()) - 1));
            let h = g.consistent_subgraph(&x).unwrap();
            prop_assert!(h.is_subgraph_of(&g));
            prop_assert!(h.enumerate_cycles(DEFAULT_CYCLE_CAP).unwrap().iter().all(|c| c.is_positive()));
        }
    }
}
