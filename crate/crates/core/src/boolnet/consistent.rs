//! Networks whose interaction graph is exactly a given signed digraph.
//!
//! For a vertex with `k` distinct in-neighbours, a table is admissible when
//! its dependence on each input has exactly the signs of the arcs from that
//! neighbour. All tables with `k <= 4` are bucketed by this sign pattern
//! once, so looking up the candidates of a vertex is a table access.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BooleanNetwork, LocalFunction};
use crate::error::{Error, Result};
use crate::sgraph::{Sign, SignedDigraph};

/// Largest supported number of distinct in-neighbours.
pub const DEFAULT_MAX_INDEGREE: usize = 4;

// catalog()[k][pattern] lists the table codes of arity k with that
// pattern; bit 2i of the pattern is "positive in input i", bit 2i+1
// "negative in input i".
fn catalog() -> &'static [Vec<Vec<u16>>] {
    static CATALOG: OnceLock<Vec<Vec<Vec<u16>>>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        (0..=DEFAULT_MAX_INDEGREE)
            .map(|k| {
                let mut buckets = vec![Vec::new(); 1 << (2 * k)];
                for code in 0..1u32 << (1 << k) {
                    buckets[pattern(k, code)].push(code as u16);
                }
                buckets
            })
            .collect()
    })
}

fn pattern(k: usize, code: u32) -> usize {
    let mut p = 0;
    for i in 0..k {
        let bit = 1 << (k - 1 - i);
        for j in (0..1usize << k).filter(|j| j & bit == 0) {
            match ((code >> j) & 1, (code >> (j | bit)) & 1) {
                (0, 1) => p |= 1 << (2 * i),
                (1, 0) => p |= 1 << (2 * i + 1),
                _ => {}
            }
        }
    }
    p
}

// In-neighbours of v and the catalog bucket matching its in-arcs.
fn bucket(g: &SignedDigraph, v: usize, max_indegree: usize) -> Result<(Vec<usize>, &'static [u16])> {
    let inputs = g.in_neighbors(v);
    let k = inputs.len();
    let limit = max_indegree.min(DEFAULT_MAX_INDEGREE);
    if k > limit {
        return Err(Error::LimitExceeded {
            what: "distinct in-neighbours",
            limit,
            actual: k,
        });
    }
    let mut p = 0;
    for (i, &u) in inputs.iter().enumerate() {
        for a in g.arcs_between(u, v) {
            p |= match a.sign {
                Sign::Positive => 1 << (2 * i),
                Sign::Negative => 1 << (2 * i + 1),
            };
        }
    }
    Ok((inputs, &catalog()[k][p]))
}

/// Every local function `f_v` realising exactly the in-arcs of `v`.
pub fn candidates(g: &SignedDigraph, v: usize) -> Result<Vec<LocalFunction>> {
    let (inputs, codes) = bucket(g, v, DEFAULT_MAX_INDEGREE)?;
    Ok(codes
        .iter()
        .map(|&c| LocalFunction::from_code(inputs.clone(), u64::from(c)))
        .collect())
}

pub(crate) fn candidate_lists(g: &SignedDigraph, max_indegree: usize) -> Result<Vec<Vec<LocalFunction>>> {
    if g.vertex_count() != g.order() {
        return Err(Error::Precondition(
            "networks need a graph on all of 1..=n".into(),
        ));
    }
    g.vertices()
        .map(|v| {
            let (inputs, codes) = bucket(g, v, max_indegree)?;
            Ok(codes
                .iter()
                .map(|&c| LocalFunction::from_code(inputs.clone(), u64::from(c)))
                .collect())
        })
        .collect()
}

/// Number of networks with interaction graph `g`.
pub fn count_consistent(g: &SignedDigraph) -> Result<u128> {
    let mut total = 1u128;
    for v in g.vertices() {
        total = total.saturating_mul(bucket(g, v, DEFAULT_MAX_INDEGREE)?.1.len() as u128);
    }
    Ok(total)
}

/// All networks with interaction graph exactly `g`, vertex 1 varying
/// slowest.
pub fn enumerate_consistent(g: &SignedDigraph, max_indegree: usize) -> Result<ConsistentNetworks> {
    let lists = candidate_lists(g, max_indegree)?;
    let empty = lists.iter().any(Vec::is_empty);
    Ok(ConsistentNetworks {
        digits: vec![0; lists.len()],
        lists,
        done: empty,
    })
}

pub struct ConsistentNetworks {
    lists: Vec<Vec<LocalFunction>>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for ConsistentNetworks {
    type Item = BooleanNetwork;

    fn next(&mut self) -> Option<BooleanNetwork> {
        if self.done {
            return None;
        }
        let locals = self
            .digits
            .iter()
            .zip(&self.lists)
            .map(|(&d, l)| l[d].clone())
            .collect();
        let net = BooleanNetwork::new(locals).expect("candidate inputs are vertices");
        self.done = true;
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.lists[i].len() {
                self.done = false;
                break;
            }
            self.digits[i] = 0;
        }
        Some(net)
    }
}

/// A network drawn uniformly from the consistent ones, one local function
/// per vertex, reproducibly from `seed`.
pub fn sample_consistent(g: &SignedDigraph, seed: u64) -> Result<BooleanNetwork> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(g, &mut rng)
}

pub(crate) fn sample_with(g: &SignedDigraph, rng: &mut impl Rng) -> Result<BooleanNetwork> {
    let mut locals = Vec::with_capacity(g.order());
    for v in g.vertices() {
        let (inputs, codes) = bucket(g, v, DEFAULT_MAX_INDEGREE)?;
        if codes.is_empty() {
            return Err(Error::Precondition(format!(
                "no local function realises the in-arcs of vertex {v}"
            )));
        }
        let code = codes[rng.gen_range(0..codes.len())];
        locals.push(LocalFunction::from_code(inputs, u64::from(code)));
    }
    BooleanNetwork::new(locals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{all_simple_graphs, figure1};
    use crate::testutil::{arb_graph, graph};
    use proptest::prelude::*;

    #[test]
    fn positive_loop_has_only_the_identity() {
        let nets: Vec<_> = enumerate_consistent(&graph(1, "1 1 +"), 4).unwrap().collect();
        assert_eq!(nets, vec![BooleanNetwork::identity(1)]);
    }

    #[test]
    fn isolated_vertex_has_two_constants() {
        assert_eq!(enumerate_consistent(&SignedDigraph::empty(1), 4).unwrap().count(), 2);
    }

    #[test]
    fn positive_two_cycle_has_one_network() {
        let nets: Vec<_> = enumerate_consistent(&graph(2, "1 2 +, 2 1 +"), 4).unwrap().collect();
        assert_eq!(nets.len(), 1);
        assert_eq!(nets[0].fixed_points_packed().unwrap(), vec![0, 3]);
    }

    #[test]
    fn catalog_partitions_all_tables() {
        for (k, buckets) in catalog().iter().enumerate() {
            assert_eq!(buckets.iter().map(Vec::len).sum::<usize>(), 1 << (1 << k));
            for (p, b) in buckets.iter().enumerate() {
                assert!(b.iter().all(|&c| pattern(k, u32::from(c)) == p));
                // one sign per input is always realisable (by a threshold function)
                let single = (0..k).all(|i| matches!((p >> (2 * i)) & 3, 1 | 2));
                if single {
                    assert!(!b.is_empty(), "k = {k}, pattern {p:b}");
                }
            }
        }
    }

    #[test]
    fn both_signs_from_a_lone_input_are_unrealisable() {
        let g = graph(2, "1 2 +, 1 2 -");
        assert_eq!(count_consistent(&g).unwrap(), 0);
        assert!(matches!(sample_consistent(&g, 0), Err(Error::Precondition(_))));
        // with a second input, xor realises both signs on each
        assert_eq!(count_consistent(&graph(3, "1 3 +, 1 3 -, 2 3 +, 2 3 -")).unwrap(), 2 * 2 * 2);
    }

    #[test]
    fn monotone_counts() {
        // monotone functions of 2 and 3 variables depending on all inputs
        assert_eq!(count_consistent(&graph(3, "1 3 +, 2 3 +")).unwrap(), 2 * 2 * 2);
        assert_eq!(count_consistent(&graph(4, "1 4 +, 2 4 +, 3 4 -")).unwrap(), 2 * 2 * 2 * 9);
    }

    #[test]
    fn indegree_limit() {
        let g = graph(5, "1 5 +, 2 5 +, 3 5 +, 4 5 +, 5 5 +");
        assert!(matches!(enumerate_consistent(&g, 4), Err(Error::LimitExceeded { .. })));
        assert!(matches!(enumerate_consistent(&figure1(5).unwrap(), 1), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn exhaustive_soundness_for_two_vertices() {
        for g in all_simple_graphs(2) {
            let nets: Vec<_> = enumerate_consistent(&g, 4).unwrap().collect();
            assert_eq!(nets.len() as u128, count_consistent(&g).unwrap());
            assert!(nets.iter().all(|f| f.interaction_graph() == g));
        }
    }

    #[test]
    fn sampling_is_reproducible_and_sound() {
        let g = figure1(5).unwrap();
        let f = sample_consistent(&g, 3).unwrap();
        assert_eq!(f, sample_consistent(&g, 3).unwrap());
        assert_eq!(f.interaction_graph(), g);
        assert_eq!(sample_consistent(&graph(1, "1 1 +"), 9).unwrap(), BooleanNetwork::identity(1));
    }

    proptest! {
        #[test]
        fn samples_realise_the_graph(g in arb_graph(5), seed in any::<u64>()) {
            prop_assume!(g.vertices().all(|v| g.in_neighbors(v).len() <= 4));
            prop_assume!(count_consistent(&g).unwrap() > 0);
            let f = sample_consistent(&g, seed).unwrap();
            prop_assert_eq!(f.interaction_graph(), g);
        }
    }
}
