//! Signed digraphs: vertices `1..=n`, arcs carrying a sign, loops and
//! parallel arcs of opposite signs allowed.
//!
//! Subgraph operations keep the original vertex ids; a graph therefore
//! carries its id range (`order`) together with the subset of ids that are
//! actually present.

mod balance;
pub mod cycles;
pub mod scc;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::BitState;

pub use balance::{two_coloring, TwoColoring};
pub use cycles::{CycleLength, SignedCycle, SignedPath, DEFAULT_CYCLE_CAP};
pub use scc::{Component, ComponentDecomposition};

pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Positive, Sign::Negative];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            _ => None,
        }
    }

    /// Sign of a product whose negative factors number `negatives`.
    pub fn from_parity(negatives: usize) -> Sign {
        if negatives.is_multiple_of(2) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub sign: Sign,
}

impl Arc {
    pub fn new(source: usize, target: usize, sign: Sign) -> Self {
        Arc {
            source,
            target,
            sign,
        }
    }

    pub fn pos(source: usize, target: usize) -> Self {
        Arc::new(source, target, Sign::Positive)
    }

    pub fn neg(source: usize, target: usize) -> Self {
        Arc::new(source, target, Sign::Negative)
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    pub fn reversed(&self) -> Arc {
        Arc::new(self.target, self.source, self.sign)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}->{},{})", self.source, self.target, self.sign)
    }
}

/// Immutable signed digraph with arcs kept sorted by `(source, target, sign)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedDigraph {
    order: usize,
    present: Vec<bool>,
    arcs: Vec<Arc>,
    // out-arcs of v are arcs[out_offsets[v-1]..out_offsets[v]]
    out_offsets: Vec<usize>,
    // in-arcs of v are arcs[in_index[i]] for i in in_offsets[v-1]..in_offsets[v]
    in_offsets: Vec<usize>,
    in_index: Vec<u32>,
}

impl SignedDigraph {
    /// Graph on all of `1..=order`. Fails on out-of-range ids or repeated arcs.
    pub fn new(order: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for a in &arcs {
            check_id(a.source, order)?;
            check_id(a.target, order)?;
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0]));
        }
        Ok(Self::from_sorted(order, vec![true; order], arcs))
    }

    /// Graph without arcs on `1..=order`.
    pub fn empty(order: usize) -> Self {
        Self::from_sorted(order, vec![true; order], Vec::new())
    }

    // `arcs` sorted, deduplicated, and between present vertices.
    fn from_sorted(order: usize, present: Vec<bool>, arcs: Vec<Arc>) -> Self {
        let mut out_offsets = vec![0usize; order + 1];
        let mut in_offsets = vec![0usize; order + 1];
        for a in &arcs {
            out_offsets[a.source] += 1;
            in_offsets[a.target] += 1;
        }
        for v in 1..=order {
            out_offsets[v] += out_offsets[v - 1];
            in_offsets[v] += in_offsets[v - 1];
        }
        let mut in_index: Vec<u32> = (0..arcs.len() as u32).collect();
        in_index.sort_by_key(|&i| {
            let a = &arcs[i as usize];
            (a.target, a.source, a.sign)
        });
        SignedDigraph {
            order,
            present,
            arcs,
            out_offsets,
            in_offsets,
            in_index,
        }
    }

    fn filtered(&self, present: Vec<bool>, keep: impl Fn(&Arc) -> bool) -> Self {
        let arcs = self
            .arcs
            .iter()
            .filter(|a| present[a.source - 1] && present[a.target - 1] && keep(a))
            .copied()
            .collect();
        Self::from_sorted(self.order, present, arcs)
    }

    /// Size of the id range `1..=order`; equals the vertex count unless
    /// vertices were deleted.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.order).filter(move |&v| self.present[v - 1])
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v >= 1 && v <= self.order && self.present[v - 1]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, a: &Arc) -> bool {
        a.source >= 1 && a.source <= self.order && self.out_arcs(a.source).binary_search(a).is_ok()
    }

    pub fn out_arcs(&self, v: usize) -> &[Arc] {
        &self.arcs[self.out_offsets[v - 1]..self.out_offsets[v]]
    }

    /// Arcs entering `v`, sorted by `(source, sign)`.
    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.in_index[self.in_offsets[v - 1]..self.in_offsets[v]]
            .iter()
            .map(move |&i| &self.arcs[i as usize])
    }

    /// Number of in-coming arcs (parallel arcs counted separately).
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_offsets[v] - self.in_offsets[v - 1]
    }

    /// Arcs from `u` to `v` (zero, one or two of them).
    pub fn arcs_between(&self, u: usize, v: usize) -> &[Arc] {
        let out = self.out_arcs(u);
        let start = out.partition_point(|a| a.target < v);
        let end = out.partition_point(|a| a.target <= v);
        &out[start..end]
    }

    /// Distinct in-neighbours, ascending.
    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.in_arcs(v).map(|a| a.source).collect();
        ns.dedup();
        ns
    }

    /// In-neighbours of `v` of the given sign.
    pub fn in_neighbors_of_sign(&self, v: usize, sign: Sign) -> Vec<usize> {
        self.in_arcs(v)
            .filter(|a| a.sign == sign)
            .map(|a| a.source)
            .collect()
    }

    /// Distinct out-neighbours, ascending.
    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.out_arcs(v).iter().map(|a| a.target).collect();
        ns.dedup();
        ns
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_degree(v) == 0
    }

    pub fn sources(&self) -> VertexSet {
        self.vertices().filter(|&v| self.is_source(v)).collect()
    }

    /// No vertex has both a positive and a negative arc from the same in-neighbour.
    pub fn is_simple(&self) -> bool {
        self.arcs
            .windows(2)
            .all(|w| (w[0].source, w[0].target) != (w[1].source, w[1].target))
    }

    pub fn is_subgraph_of(&self, other: &SignedDigraph) -> bool {
        self.order == other.order
            && self.vertices().all(|v| other.contains_vertex(v))
            && self.arcs.iter().all(|a| other.has_arc(a))
    }

    fn present_set(&self, ids: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.order];
        for &v in ids {
            check_id(v, self.order)?;
            if !self.present[v - 1] {
                return Err(Error::VertexAbsent(v));
            }
            mask[v - 1] = true;
        }
        Ok(mask)
    }

    /// `G[I]`: keeps the vertices of `keep` and the arcs between them.
    pub fn induced(&self, keep: &[usize]) -> Result<SignedDigraph> {
        let present = self.present_set(keep)?;
        Ok(self.filtered(present, |_| true))
    }

    /// `G^I`: removes every arc whose target lies in `targets`.
    pub fn remove_incoming(&self, targets: &[usize]) -> Result<SignedDigraph> {
        let mask = self.present_set(targets)?;
        Ok(self.filtered(self.present.clone(), |a| !mask[a.target - 1]))
    }

    /// `G \ a`.
    pub fn delete_arc(&self, arc: &Arc) -> Result<SignedDigraph> {
        if !self.has_arc(arc) {
            return Err(Error::ArcAbsent(*arc));
        }
        Ok(self.filtered(self.present.clone(), |a| a != arc))
    }

    /// `G \ v`: removes the vertex and its arcs; other ids are unchanged.
    pub fn delete_vertex(&self, v: usize) -> Result<SignedDigraph> {
        self.delete_vertices(&[v])
    }

    pub fn delete_vertices(&self, removed: &[usize]) -> Result<SignedDigraph> {
        let mask = self.present_set(removed)?;
        let present = self
            .present
            .iter()
            .zip(&mask)
            .map(|(&p, &m)| p && !m)
            .collect();
        Ok(self.filtered(present, |_| true))
    }

    /// `G*`: closes the arc set under sign-preserving reversal.
    pub fn symmetrize(&self) -> SignedDigraph {
        let mut arcs: Vec<Arc> = self
            .arcs
            .iter()
            .flat_map(|a| [*a, a.reversed()])
            .collect();
        arcs.sort_unstable();
        arcs.dedup();
        Self::from_sorted(self.order, self.present.clone(), arcs)
    }

    /// `G(x)`: positive arcs between equal values, negative arcs between
    /// different values.
    pub fn consistent_subgraph(&self, x: &BitState) -> Result<SignedDigraph> {
        x.ensure_len(self.order)?;
        Ok(self.filtered(self.present.clone(), |a| {
            (x.get(a.source) == x.get(a.target)) == a.sign.is_positive()
        }))
    }

    /// Same graph with every arc sign reversed.
    pub fn negated(&self) -> SignedDigraph {
        let mut arcs: Vec<Arc> = self
            .arcs
            .iter()
            .map(|a| Arc::new(a.source, a.target, a.sign.flip()))
            .collect();
        arcs.sort_unstable();
        Self::from_sorted(self.order, self.present.clone(), arcs)
    }

    /// Whether some directed path from a vertex of `from` reaches `to` while
    /// visiting no vertex of `forbidden` (endpoints included). A vertex of
    /// `from` equal to `to` is a trivial path.
    pub fn reachable(&self, from: &[usize], forbidden: &[usize], to: usize) -> Result<bool> {
        check_id(to, self.order)?;
        let mut blocked = vec![false; self.order];
        for &v in forbidden {
            check_id(v, self.order)?;
            blocked[v - 1] = true;
        }
        if blocked[to - 1] {
            return Err(Error::Precondition(format!(
                "target vertex {to} is forbidden"
            )));
        }
        let mut seen = blocked;
        let mut queue = VecDeque::new();
        for &v in from {
            check_id(v, self.order)?;
            if self.present[v - 1] && !seen[v - 1] {
                seen[v - 1] = true;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            if u == to {
                return Ok(true);
            }
            for a in self.out_arcs(u) {
                if !seen[a.target - 1] {
                    seen[a.target - 1] = true;
                    queue.push_back(a.target);
                }
            }
        }
        Ok(false)
    }
}

fn check_id(v: usize, order: usize) -> Result<()> {
    if v >= 1 && v <= order {
        Ok(())
    } else {
        Err(Error::InvalidVertex { vertex: v, order })
    }
}

impl fmt::Display for SignedDigraph {
    /// The `sdigraph` text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sdigraph {}", self.order)?;
        for a in &self.arcs {
            writeln!(f, "{} {} {}", a.source, a.target, a.sign)?;
        }
        Ok(())
    }
}
