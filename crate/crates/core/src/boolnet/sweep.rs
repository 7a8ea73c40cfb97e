//! Sweeps over all consistent networks of a graph without listing them.
//!
//! For a vertex `v` and a candidate `f_v`, let `M(f_v)` be the set of
//! states `x` with `f_v(x) = x_v`. The fixed points of a network are the
//! intersection of its masks, so quantifying over networks reduces to
//! quantifying over one distinct mask per vertex and candidate.

use std::collections::HashSet;

use super::consistent::candidate_lists;
use super::{BooleanNetwork, LocalFunction};
use crate::error::{Error, Result};
use crate::sgraph::{Arc, SignedDigraph};

/// Largest order handled by the sweeps.
pub const MAX_SWEEP_ORDER: usize = 12;

type Mask = Vec<u64>;

fn check_order(g: &SignedDigraph) -> Result<()> {
    if g.order() > MAX_SWEEP_ORDER {
        return Err(Error::LimitExceeded {
            what: "graph order for consistent-network sweeps",
            limit: MAX_SWEEP_ORDER,
            actual: g.order(),
        });
    }
    Ok(())
}

fn mask_over(points: impl Iterator<Item = bool>, len: usize) -> Mask {
    let mut m = vec![0u64; len.div_ceil(64)];
    for (i, b) in points.enumerate() {
        if b {
            m[i / 64] |= 1 << (i % 64);
        }
    }
    m
}

// Distinct masks per vertex, each with one local function realising it.
fn distinct_masks(
    lists: Vec<Vec<LocalFunction>>,
    points: usize,
    agrees: impl Fn(&LocalFunction, usize, usize) -> bool,
) -> Vec<Vec<(Mask, LocalFunction)>> {
    lists
        .into_iter()
        .enumerate()
        .map(|(i, list)| {
            let v = i + 1;
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for f in list {
                let m = mask_over((0..points).map(|p| agrees(&f, v, p)), points);
                if seen.insert(m.clone()) {
                    out.push((m, f));
                }
            }
            out
        })
        .collect()
}

fn popcount(m: &[u64]) -> u32 {
    m.iter().map(|w| w.count_ones()).sum()
}

fn and(a: &[u64], b: &[u64]) -> Mask {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bit(s: u64, n: usize, v: usize) -> bool {
    (s >> (n - v)) & 1 == 1
}

/// Largest number of fixed points of a network with interaction graph
/// `g`, with a network attaining it.
pub fn max_fixed_points(g: &SignedDigraph, max_indegree: usize) -> Result<(usize, BooleanNetwork)> {
    check_order(g)?;
    let n = g.order();
    let states = 1usize << n;
    let masks = distinct_masks(candidate_lists(g, max_indegree)?, states, |f, v, s| {
        f.eval_packed(n, s as u64) == bit(s as u64, n, v)
    });
    if masks.iter().any(Vec::is_empty) {
        return Err(Error::Precondition("graph has no consistent network".into()));
    }
    let mut best: Option<(u32, Vec<usize>)> = None;
    let mut visited: HashSet<(usize, Mask)> = HashSet::new();
    let mut choice = Vec::with_capacity(n);
    let full = mask_over((0..states).map(|_| true), states);
    dfs_max(&masks, 0, full, &mut choice, &mut best, &mut visited);
    let (count, choice) = best.expect("at least one network");
    let locals = choice
        .iter()
        .enumerate()
        .map(|(i, &c)| masks[i][c].1.clone())
        .collect();
    Ok((count as usize, BooleanNetwork::new(locals)?))
}

fn dfs_max(
    masks: &[Vec<(Mask, LocalFunction)>],
    level: usize,
    cur: Mask,
    choice: &mut Vec<usize>,
    best: &mut Option<(u32, Vec<usize>)>,
    visited: &mut HashSet<(usize, Mask)>,
) {
    let count = popcount(&cur);
    if let Some((b, _)) = best {
        if count <= *b {
            return;
        }
    }
    if level == masks.len() {
        *best = Some((count, choice.clone()));
        return;
    }
    if !visited.insert((level, cur.clone())) {
        return;
    }
    for (i, (m, _)) in masks[level].iter().enumerate() {
        choice.push(i);
        dfs_max(masks, level + 1, and(&cur, m), choice, best, visited);
        choice.pop();
    }
}

/// A network with interaction graph `g` that canalizes no arc of
/// `uncanalized` and has no pair of fixed points `x`, `x̄`, if one exists.
pub fn antipodal_counterexample(
    g: &SignedDigraph,
    uncanalized: &[Arc],
    max_indegree: usize,
) -> Result<Option<BooleanNetwork>> {
    check_order(g)?;
    let n = g.order();
    let mut lists = candidate_lists(g, max_indegree)?;
    for a in uncanalized {
        let list = &mut lists[a.target - 1];
        let mut kept = Vec::with_capacity(list.len());
        for f in list.drain(..) {
            if !f.canalizes(a.source, a.sign).ok_or(Error::NotAnInteraction(*a))? {
                kept.push(f);
            }
        }
        *list = kept;
    }
    if lists.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // pair p is {x, complement of x} with x the state p (so x_1 = 0)
    let pairs = 1usize << (n - 1);
    let all = (1u64 << n) - 1;
    let masks = distinct_masks(lists, pairs, |f, v, p| {
        let x = p as u64;
        let y = x ^ all;
        f.eval_packed(n, x) == bit(x, n, v) && f.eval_packed(n, y) == bit(y, n, v)
    });
    let mut visited = HashSet::new();
    let mut choice = Vec::with_capacity(n);
    let full = mask_over((0..pairs).map(|_| true), pairs);
    if dfs_empty(&masks, 0, full, &mut choice, &mut visited) {
        let locals = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| masks[i][c].1.clone())
            .collect();
        return Ok(Some(BooleanNetwork::new(locals)?));
    }
    Ok(None)
}

// Whether some completion of `choice` makes the intersection empty.
fn dfs_empty(
    masks: &[Vec<(Mask, LocalFunction)>],
    level: usize,
    cur: Mask,
    choice: &mut Vec<usize>,
    visited: &mut HashSet<(usize, Mask)>,
) -> bool {
    if popcount(&cur) == 0 {
        // any completion keeps it empty
        while choice.len() < masks.len() {
            choice.push(0);
        }
        return true;
    }
    if level == masks.len() || !visited.insert((level, cur.clone())) {
        return false;
    }
    for (i, (m, _)) in masks[level].iter().enumerate() {
        choice.push(i);
        if dfs_empty(masks, level + 1, and(&cur, m), choice, visited) {
            return true;
        }
        choice.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolnet::enumerate_consistent;
    use crate::generate::{all_simple_graphs, figure1};
    use crate::testutil::graph;

    fn brute_max(g: &SignedDigraph) -> usize {
        enumerate_consistent(g, 4)
            .unwrap()
            .map(|f| f.fixed_points_packed().unwrap().len())
            .max()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(max_fixed_points(&graph(2, "1 2 +, 2 1 +"), 4).unwrap().0, 2);
        assert_eq!(max_fixed_points(&graph(1, "1 1 -"), 4).unwrap().0, 0);
        assert_eq!(max_fixed_points(&figure1(5).unwrap(), 4).unwrap().0, 1);
    }

    #[test]
    fn agrees_with_enumeration_on_small_graphs() {
        for g in all_simple_graphs(2) {
            let (m, f) = max_fixed_points(&g, 4).unwrap();
            assert_eq!(m, brute_max(&g));
            assert_eq!(f.fixed_points().unwrap().len(), m);
            assert_eq!(f.interaction_graph(), g);
        }
        for code in (0..crate::generate::simple_graph_count(3)).step_by(97) {
            let g = crate::generate::simple_graph(3, code);
            assert_eq!(max_fixed_points(&g, 4).unwrap().0, brute_max(&g));
        }
    }

    #[test]
    fn antipodal_sweep_matches_enumeration() {
        // strong, one negative cycle (the loop), one positive cycle
        let g = graph(2, "1 1 -, 1 2 +, 2 1 +");
        let neg = [Arc::neg(1, 1)];
        let brute = enumerate_consistent(&g, 4).unwrap().find(|f| {
            !f.is_canalized(&neg[0]).unwrap() && {
                let fp = f.fixed_points_packed().unwrap();
                !fp.iter().any(|&x| fp.contains(&(x ^ 3)))
            }
        });
        assert_eq!(antipodal_counterexample(&g, &neg, 4).unwrap(), brute);
        // without the canalization filter, some network breaks the conclusion
        let found = antipodal_counterexample(&g, &[], 4).unwrap();
        let brute = enumerate_consistent(&g, 4).unwrap().any(|f| {
            let fp = f.fixed_points_packed().unwrap();
            !fp.iter().any(|&x| fp.contains(&(x ^ 3)))
        });
        assert_eq!(found.is_some(), brute);
    }
}
