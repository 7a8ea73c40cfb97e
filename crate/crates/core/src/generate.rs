//! Instance generators: the triangle-chain family, double cycles, random
//! graphs, and exhaustive enumeration of small graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sgraph::{Arc, Sign, SignedDigraph};

/// Chain of positive triangles with negative loops, for odd `n >= 3`.
///
/// Triangle 1 is `1 -> 2 -> 3 -> 1`; triangle `t >= 2` is
/// `2(t-1) -> 2t -> 2t+1 -> 2(t-1)`. Every odd vertex `>= 3` carries a
/// negative loop.
pub fn figure1(n: usize) -> Result<SignedDigraph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::BadParams(format!(
            "figure1 needs an odd order of at least 3, got {n}"
        )));
    }
    let mut arcs = vec![Arc::pos(1, 2), Arc::pos(2, 3), Arc::pos(3, 1)];
    for t in 2..=(n - 1) / 2 {
        let (a, b, c) = (2 * (t - 1), 2 * t, 2 * t + 1);
        arcs.extend([Arc::pos(a, b), Arc::pos(b, c), Arc::pos(c, a)]);
    }
    arcs.extend((3..=n).step_by(2).map(|v| Arc::neg(v, v)));
    SignedDigraph::new(n, arcs)
}

/// Two cycles sharing exactly vertex 1. The first uses vertices
/// `1..=len1`, the second `1` and the next `len2 - 1` ids. Each cycle's
/// closing arc carries its sign; all other arcs are positive.
pub fn double_cycle(len1: usize, sign1: Sign, len2: usize, sign2: Sign) -> Result<SignedDigraph> {
    if len1 == 0 || len2 == 0 {
        return Err(Error::BadParams("cycle lengths must be positive".into()));
    }
    if len1 == 1 && len2 == 1 && sign1 == sign2 {
        return Err(Error::BadParams(
            "two loops of the same sign are the same cycle".into(),
        ));
    }
    let n = len1 + len2 - 1;
    let mut arcs = Vec::with_capacity(len1 + len2);
    let mut push_cycle = |vertices: Vec<usize>, sign: Sign| {
        let k = vertices.len();
        for i in 0..k {
            let s = if i + 1 == k { sign } else { Sign::Positive };
            arcs.push(Arc::new(vertices[i], vertices[(i + 1) % k], s));
        }
    };
    push_cycle((1..=len1).collect(), sign1);
    push_cycle(
        std::iter::once(1).chain(len1 + 1..=n).collect(),
        sign2,
    );
    SignedDigraph::new(n, arcs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    /// Expected number of signed arcs per ordered pair (loops included).
    pub density: f64,
    /// Share of that density given to negative arcs.
    pub negative_fraction: f64,
}

impl RandomParams {
    /// Density `2/n` (capped at 1), signs balanced.
    pub fn new(n: usize) -> Self {
        RandomParams {
            n,
            density: (2.0 / n.max(1) as f64).min(1.0),
            negative_fraction: 0.5,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::BadParams("random graphs need n >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::BadParams(format!(
                "density {} is outside [0, 1]",
                self.density
            )));
        }
        if !(0.0..=1.0).contains(&self.negative_fraction) {
            return Err(Error::BadParams(format!(
                "negative fraction {} is outside [0, 1]",
                self.negative_fraction
            )));
        }
        Ok(())
    }
}

/// Each of the `2n^2` signed arcs is drawn independently: a positive arc
/// with probability `density * (1 - q)`, a negative one with
/// `density * q`.
pub fn random(params: &RandomParams, seed: u64) -> Result<SignedDigraph> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_with(params, &mut rng))
}

pub(crate) fn random_with(params: &RandomParams, rng: &mut impl Rng) -> SignedDigraph {
    let n = params.n;
    let p_neg = params.density * params.negative_fraction;
    let p_pos = params.density - p_neg;
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if rng.gen_bool(p_pos) {
                arcs.push(Arc::pos(u, v));
            }
            if rng.gen_bool(p_neg) {
                arcs.push(Arc::neg(u, v));
            }
        }
    }
    SignedDigraph::new(n, arcs).expect("generated arcs are distinct and in range")
}

/// Number of simple signed digraphs on `n` labelled vertices: each ordered
/// pair (loops included) has no arc, a positive arc, or a negative arc.
pub fn simple_graph_count(n: usize) -> u64 {
    3u64.pow((n * n) as u32)
}

/// The simple signed digraph with base-3 code `code`; digit `(u-1)n + (v-1)`
/// (least significant first) is 0, 1, 2 for no arc, `+`, `-` on `u -> v`.
pub fn simple_graph(n: usize, mut code: u64) -> SignedDigraph {
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            match code % 3 {
                1 => arcs.push(Arc::pos(u, v)),
                2 => arcs.push(Arc::neg(u, v)),
                _ => {}
            }
            code /= 3;
        }
    }
    SignedDigraph::new(n, arcs).expect("one arc per ordered pair")
}

/// Every simple signed digraph on `n` vertices, in code order.
pub fn all_simple_graphs(n: usize) -> impl Iterator<Item = SignedDigraph> {
    (0..simple_graph_count(n)).map(move |c| simple_graph(n, c))
}

/// Every strong simple signed digraph on `1..=n` with exactly one negative
/// cycle, needs `n <= 4`. For each strong arc set the cycles are listed
/// once as arc masks, so a sign assignment is checked by parities alone.
pub fn strong_with_unique_negative_cycle(n: usize) -> Vec<SignedDigraph> {
    assert!((1..=4).contains(&n), "exhaustive generation needs 1 <= n <= 4");
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (1..=n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for skeleton in 0u32..1 << (n * n) {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| skeleton >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let unsigned = SignedDigraph::new(n, arcs.iter().map(|&(u, v)| Arc::pos(u, v)))
            .expect("arcs are distinct");
        if !unsigned.is_strong() {
            continue;
        }
        let cycles: Vec<u32> = unsigned
            .enumerate_cycles(usize::MAX)
            .expect("no cap")
            .iter()
            .map(|c| {
                c.arcs().iter().fold(0u32, |m, a| {
                    m | 1 << arcs.iter().position(|&p| p == (a.source, a.target)).expect("cycle arc")
                })
            })
            .collect();
        for signs in 0u32..1 << arcs.len() {
            let mut negative = cycles.iter().filter(|&&c| (c & signs).count_ones() % 2 == 1);
            if negative.next().is_some() && negative.next().is_none() {
                let signed = arcs.iter().enumerate().map(|(i, &(u, v))| {
                    let sign = if signs >> i & 1 == 1 { Sign::Negative } else { Sign::Positive };
                    Arc::new(u, v, sign)
                });
                out.push(SignedDigraph::new(n, signed).expect("arcs are distinct"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_five_has_drawn_arcs() {
        let g = figure1(5).unwrap();
        let expected = [
            Arc::pos(1, 2),
            Arc::pos(2, 3),
            Arc::pos(3, 1),
            Arc::pos(2, 4),
            Arc::pos(4, 5),
            Arc::pos(5, 2),
            Arc::neg(3, 3),
            Arc::neg(5, 5),
        ];
        assert_eq!(g.arc_count(), 8);
        assert!(expected.iter().all(|a| g.has_arc(a)));
    }

    #[test]
    fn figure1_rejects_even_or_small() {
        assert!(figure1(4).is_err());
        assert!(figure1(1).is_err());
    }

    #[test]
    fn double_cycle_shares_one_vertex() {
        let g = double_cycle(2, Sign::Positive, 1, Sign::Negative).unwrap();
        assert_eq!(g.order(), 2);
        let mut arcs = g.arcs().to_vec();
        arcs.sort();
        assert_eq!(arcs, vec![Arc::neg(1, 1), Arc::pos(1, 2), Arc::pos(2, 1)]);
        let g = double_cycle(3, Sign::Positive, 3, Sign::Negative).unwrap();
        assert_eq!(g.order(), 5);
        let cycles = g.enumerate_cycles(100).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].vertices(), vec![1, 2, 3]);
        assert_eq!(cycles[1].vertices(), vec![1, 4, 5]);
        assert!(cycles[0].is_positive() && !cycles[1].is_positive());
    }

    #[test]
    fn random_is_reproducible() {
        let p = RandomParams::new(6);
        assert_eq!(random(&p, 7).unwrap(), random(&p, 7).unwrap());
        let bad = RandomParams {
            density: 1.5,
            ..RandomParams::new(3)
        };
        assert!(random(&bad, 0).is_err());
    }

    #[test]
    fn simple_graph_codes_are_bijective_for_n2() {
        let all: Vec<_> = all_simple_graphs(2).collect();
        assert_eq!(all.len(), 81);
        let mut text: Vec<String> = all.iter().map(|g| g.to_string()).collect();
        text.sort();
        text.dedup();
        assert_eq!(text.len(), 81);
        assert!(all.iter().all(|g| g.is_simple()));
    }

    #[test]
    fn strong_unique_negative_matches_filter() {
        for n in 1..=3 {
            let fast = strong_with_unique_negative_cycle(n);
            let slow: Vec<SignedDigraph> = all_simple_graphs(n)
                .filter(|g| {
                    g.is_strong()
                        && g.enumerate_cycles(100).unwrap().iter().filter(|c| !c.is_positive()).count() == 1
                })
                .collect();
            let mut a: Vec<String> = fast.iter().map(|g| g.to_string()).collect();
            let mut b: Vec<String> = slow.iter().map(|g| g.to_string()).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "n = {n}");
        }
        assert_eq!(strong_with_unique_negative_cycle(1).len(), 1);
    }
}
