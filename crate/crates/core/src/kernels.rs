//! Kernels of unsigned digraphs and their fixed-point encoding.
//!
//! A kernel of `D` is an independent set `K` such that every vertex outside
//! `K` has an out-neighbour in `K`. With `f_v(x) = 1` iff `x_w = 0` for every
//! out-neighbour `w` of `v`, the fixed points of `f` are exactly the
//! indicator vectors of kernels. The interaction graph of `f` is `D`
//! reversed with every arc negative, so odd cycles of `D` become the
//! negative cycles the existence results speak about.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolnet::{BooleanNetwork, LocalFunction};
use crate::error::{Error, Result};
use crate::sgraph::{Arc, Sign, SignedDigraph};
use crate::state::BitState;
use crate::structure::isolation_condition;

/// Largest order accepted by the subset scan of [`kernels`].
pub const MAX_KERNEL_ORDER: usize = 24;

/// Digraph on `1..=n`; loops allowed, no repeated arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::InvalidVertex { vertex: w, order: n });
                }
            }
            if !set.insert((u, v)) {
                return Err(Error::DuplicatePair(u, v));
            }
        }
        Ok(Digraph { n, arcs: set })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Arcs in increasing `(source, target)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.arcs.range((v, 0)..=(v, usize::MAX)).map(|&(_, w)| w).collect()
    }

    /// The same arcs, all negative.
    pub fn to_negative(&self) -> SignedDigraph {
        SignedDigraph::new(self.n, self.arcs().map(|(u, v)| Arc::neg(u, v)))
            .expect("arcs are valid and distinct")
    }

    /// The reversed arcs, all negative: the interaction graph of
    /// [`to_network`] whenever every vertex has an out-neighbour.
    pub fn to_reversed_negative(&self) -> SignedDigraph {
        SignedDigraph::new(self.n, self.arcs().map(|(u, v)| Arc::neg(v, u)))
            .expect("arcs are valid and distinct")
    }
}

impl fmt::Display for Digraph {
    /// The `digraph` text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "digraph {}", self.n)?;
        for (u, v) in self.arcs() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Kernel {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

impl Kernel {
    /// The state with `x_v = 1` exactly on the kernel.
    pub fn indicator(&self, n: usize) -> BitState {
        let mut x = BitState::zeros(n);
        for &v in &self.vertices {
            x.set(v, true);
        }
        x
    }

    pub fn from_indicator(x: &BitState) -> Self {
        Kernel {
            vertices: x.support(),
        }
    }
}

/// Whether `set` is independent and absorbs every other vertex.
pub fn is_kernel(d: &Digraph, set: &[usize]) -> bool {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    d.arcs().all(|(u, v)| !(inside.contains(&u) && inside.contains(&v)))
        && (1..=d.n)
            .filter(|v| !inside.contains(v))
            .all(|v| d.out_neighbors(v).iter().any(|w| inside.contains(w)))
}

/// Every kernel of `d`, in lexicographic order of their sorted vertex lists.
pub fn kernels(d: &Digraph) -> Result<Vec<Kernel>> {
    let n = d.n;
    if n > MAX_KERNEL_ORDER {
        return Err(Error::LimitExceeded {
            what: "digraph order for kernel enumeration",
            limit: MAX_KERNEL_ORDER,
            actual: n,
        });
    }
    // bit v-1 stands for vertex v
    let mut out = vec![0u32; n];
    for (u, v) in d.arcs() {
        out[u - 1] |= 1 << (v - 1);
    }
    let mut found: Vec<Kernel> = (0u32..1 << n)
        .filter(|&k| {
            (0..n).all(|i| {
                if k >> i & 1 == 1 {
                    out[i] & k == 0
                } else {
                    out[i] & k != 0
                }
            })
        })
        .map(|k| Kernel {
            vertices: (0..n).filter(|i| k >> i & 1 == 1).map(|i| i + 1).collect(),
        })
        .collect();
    found.sort();
    Ok(found)
}

/// No cycle of odd length: then `d` has a kernel.
pub fn richardson_condition(d: &Digraph) -> bool {
    // with all arcs negative, the sign of a cycle is the parity of its length
    !d.to_negative().has_negative_cycle()
}

/// Every odd cycle of `d` has an arc `(u -> v)` such that `d \ (u -> v)` has
/// a non-trivial terminal component containing `u` with only even cycles.
/// This is the existence condition on negative cycles, read on the
/// interaction graph of [`to_network`]; it implies that `d` has a kernel.
pub fn generalized_condition(d: &Digraph, cap: usize) -> Result<bool> {
    Ok(isolation_condition(&d.to_reversed_negative(), Sign::Negative, cap)?.holds)
}

/// The same condition evaluated on `d` itself (initial components, the
/// head `v` of the deleted arc). It does not imply a kernel: the digraph
/// `1 -> 2, 1 -> 3, 2 -> 1, 2 -> 2` satisfies it and has none.
pub fn generalized_condition_unreversed(d: &Digraph, cap: usize) -> Result<bool> {
    Ok(isolation_condition(&d.to_negative(), Sign::Negative, cap)?.holds)
}

/// The network `f_v = AND of (not x_w)` over out-neighbours `w` of `v`,
/// constant 1 on vertices without out-neighbour. Its fixed points are the
/// kernel indicators.
pub fn to_network(d: &Digraph) -> BooleanNetwork {
    let locals = (1..=d.n)
        .map(|v| {
            let outs = d.out_neighbors(v);
            if outs.is_empty() {
                LocalFunction::constant(true)
            } else {
                LocalFunction::from_fn(outs, |bits| bits.iter().all(|&b| !b))
            }
        })
        .collect();
    BooleanNetwork::new(locals).expect("out-neighbours are vertices")
}

/// Number of digraphs on `1..=n` (loops allowed).
pub fn digraph_count(n: usize) -> u64 {
    1u64 << (n * n)
}

/// Digraph number `code`: bit `(u-1) n + (v-1)` is the arc `u -> v`.
pub fn digraph(n: usize, code: u64) -> Digraph {
    let arcs = (1..=n)
        .flat_map(|u| (1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| code >> ((u - 1) * n + (v - 1)) & 1 == 1);
    Digraph::new(n, arcs).expect("generated arcs are distinct")
}

/// Every digraph on `1..=n`, needs `n <= 7`.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    assert!(n * n < 64, "too many digraphs to enumerate");
    (0..digraph_count(n)).map(move |c| digraph(n, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgraph::DEFAULT_CYCLE_CAP as CAP;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.iter().copied()).unwrap()
    }

    fn kernel_sets(g: &Digraph) -> Vec<Vec<usize>> {
        kernels(g).unwrap().into_iter().map(|k| k.vertices).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(kernel_sets(&d(1, &[])), vec![vec![1]]);
        assert_eq!(kernel_sets(&d(2, &[(1, 2), (2, 1)])), vec![vec![1], vec![2]]);
        assert!(kernel_sets(&d(3, &[(1, 2), (2, 3), (3, 1)])).is_empty());
        assert!(kernel_sets(&d(1, &[(1, 1)])).is_empty());
        // the sink must be in the kernel, and it absorbs 1
        assert_eq!(kernel_sets(&d(2, &[(1, 2)])), vec![vec![2]]);
    }

    #[test]
    fn conditions_on_small_examples() {
        let acyclic = d(3, &[(1, 2), (2, 3)]);
        let triangle = d(3, &[(1, 2), (2, 3), (3, 1)]);
        let two = d(2, &[(1, 2), (2, 1)]);
        for (g, expected) in [(&acyclic, true), (&triangle, false), (&two, true)] {
            assert_eq!(richardson_condition(g), expected);
            assert_eq!(generalized_condition(g, CAP).unwrap(), expected);
        }
    }

    #[test]
    fn unreversed_reading_admits_a_kernelless_digraph() {
        let g = d(3, &[(1, 2), (1, 3), (2, 1), (2, 2)]);
        assert!(kernels(&g).unwrap().is_empty());
        assert!(generalized_condition_unreversed(&g, CAP).unwrap());
        assert!(!generalized_condition(&g, CAP).unwrap());
    }

    #[test]
    fn network_examples() {
        let two = to_network(&d(2, &[(1, 2), (2, 1)]));
        let fixed: Vec<String> = two.fixed_points().unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(fixed, vec!["01", "10"]);
        assert_eq!(to_network(&d(1, &[])).fixed_points().unwrap().len(), 1);
        assert!(to_network(&d(3, &[(1, 2), (2, 3), (3, 1)])).fixed_points().unwrap().is_empty());
    }

    #[test]
    fn correspondence_for_three_vertices() {
        for g in all_digraphs(3) {
            let from_net: Vec<Kernel> = to_network(&g)
                .fixed_points()
                .unwrap()
                .iter()
                .map(Kernel::from_indicator)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let ks = kernels(&g).unwrap();
            assert_eq!(ks, from_net, "{g}");
            assert!(ks.iter().all(|k| is_kernel(&g, &k.vertices)));
            if generalized_condition(&g, CAP).unwrap() {
                assert!(!ks.is_empty(), "{g}");
            }
            if richardson_condition(&g) {
                assert!(generalized_condition(&g, CAP).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn interaction_graph_is_the_reversed_negative_digraph() {
        let g = d(3, &[(1, 2), (2, 3), (3, 1), (1, 3)]);
        assert_eq!(to_network(&g).interaction_graph(), g.to_reversed_negative());
    }

    #[test]
    fn rejects_bad_arcs() {
        assert_eq!(Digraph::new(2, [(1, 2), (1, 2)]), Err(Error::DuplicatePair(1, 2)));
        assert!(matches!(Digraph::new(2, [(1, 3)]), Err(Error::InvalidVertex { .. })));
    }
}
