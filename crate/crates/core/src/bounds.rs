//! Sizes of binary codes: `A(n, d)` is the largest number of words of
//! `{0,1}^n` with pairwise Hamming distance at least `d`.
//!
//! All arithmetic is on `u128`, so `n` is limited to [`MAX_LENGTH`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sgraph::CycleLength;

pub const MAX_LENGTH: usize = 126;

/// Largest `n` accepted by [`exact_a`].
pub const EXACT_MAX_LENGTH: usize = 12;

/// Default node budget of the exact search used inside analyses.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBound {
    pub n: usize,
    pub d: CycleLength,
    pub gilbert_lower: u128,
    pub sphere_packing_upper: u128,
    pub exact: Option<u128>,
}

impl CodeBound {
    /// Best known upper bound on `A(n, d)`.
    pub fn upper(&self) -> u128 {
        self.exact.unwrap_or(self.sphere_packing_upper)
    }
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::LimitExceeded {
            what: "code length",
            limit: MAX_LENGTH,
            actual: n,
        });
    }
    Ok(())
}

// `Some(d)` when 1 <= d <= n, `None` when d > n (then A = 1).
fn effective_distance(n: usize, d: CycleLength) -> Result<Option<usize>> {
    check_length(n)?;
    match d {
        CycleLength::Finite(0) => Err(Error::InvalidDistance),
        CycleLength::Finite(d) if d <= n => Ok(Some(d)),
        _ => Ok(None),
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of words within distance `r` of a fixed word.
fn ball(n: usize, r: usize) -> u128 {
    (0..=r.min(n)).map(|k| binomial(n, k)).sum()
}

/// `ceil(2^n / V(n, d-1))`.
pub fn gilbert_lower(n: usize, d: CycleLength) -> Result<u128> {
    Ok(match effective_distance(n, d)? {
        None => 1,
        Some(d) => (1u128 << n).div_ceil(ball(n, d - 1)),
    })
}

/// `floor(2^n / V(n, floor((d-1)/2)))`.
pub fn sphere_packing_upper(n: usize, d: CycleLength) -> Result<u128> {
    Ok(match effective_distance(n, d)? {
        None => 1,
        Some(d) => (1u128 << n) / ball(n, (d - 1) / 2),
    })
}

/// Exact `A(n, d)` for `n <= 12` by exhaustive search.
pub fn exact_a(n: usize, d: usize) -> Result<u128> {
    exact_a_with_budget(n, d, u64::MAX)?.ok_or(Error::LimitExceeded {
        what: "search nodes",
        limit: usize::MAX,
        actual: usize::MAX,
    })
}

/// As [`exact_a`], giving up with `None` once the search has expanded
/// `budget` nodes.
pub fn exact_a_with_budget(n: usize, d: usize, budget: u64) -> Result<Option<u128>> {
    if n > EXACT_MAX_LENGTH {
        return Err(Error::LimitExceeded {
            what: "exact code length",
            limit: EXACT_MAX_LENGTH,
            actual: n,
        });
    }
    let Some(d) = effective_distance(n, CycleLength::Finite(d))? else {
        return Ok(Some(1));
    };
    match d {
        1 => Ok(Some(1u128 << n)),
        2 => Ok(Some(1u128 << (n - 1))),
        // Puncturing and parity extension: A(n, 2t-1) = A(n+1, 2t).
        _ if d % 2 == 1 => Ok(max_even_code(n + 1, d + 1, budget).map(u128::from)),
        _ => Ok(max_even_code(n, d, budget).map(u128::from)),
    }
}

/// Upper bound on `A(n, d)` used for fixed-point bounds: exact when the
/// search finishes within `budget`, sphere packing otherwise.
pub fn code_bound(n: usize, d: CycleLength, budget: u64) -> Result<CodeBound> {
    let exact = match effective_distance(n, d)? {
        None => Some(1),
        Some(d) if n <= EXACT_MAX_LENGTH => exact_a_with_budget(n, d, budget)?,
        Some(_) => None,
    };
    Ok(CodeBound {
        n,
        d,
        gilbert_lower: gilbert_lower(n, d)?,
        sphere_packing_upper: sphere_packing_upper(n, d)?,
        exact,
    })
}

/// `min(2^tau_tilde, A(n, g_tilde))` with the best available bound on `A`.
pub fn fp_bound(n: usize, tau_tilde: usize, g_tilde: CycleLength) -> Result<u128> {
    fp_bound_with_budget(n, tau_tilde, g_tilde, DEFAULT_SEARCH_BUDGET)
}

pub fn fp_bound_with_budget(
    n: usize,
    tau_tilde: usize,
    g_tilde: CycleLength,
    budget: u64,
) -> Result<u128> {
    let code = code_bound(n, g_tilde, budget)?.upper();
    let pow = if tau_tilde >= 127 {
        u128::MAX
    } else {
        1u128 << tau_tilde
    };
    Ok(pow.min(code))
}

// Largest code of even-weight words of length `n` with even minimum
// distance `d >= 4`. A code can be translated to contain 0; its remaining
// words are then chosen in order of weight. Coordinates are kept in cells
// (contiguous bit ranges) that every chosen word fills from the front, so a
// permutation preserving the cells fixes the chosen words and moves the next
// lightest word to one with a prefix of ones in each cell. The first
// `ORBIT_DEPTH` words are branched over such representatives only; the rest
// is a maximum clique among the remaining candidates.
fn max_even_code(n: usize, d: usize, budget: u64) -> Option<u32> {
    debug_assert!(d.is_multiple_of(2) && d >= 4 && d <= n);
    let words: Vec<u32> = (1u32..1 << n)
        .filter(|w| w.count_ones() % 2 == 0 && w.count_ones() as usize >= d)
        .collect();
    let mut search = OrbitSearch {
        d,
        clique: CliqueSearch { budget, nodes: 0 },
        best: 1, // {0} alone
    };
    search.branch(&[(0, n)], &mut vec![0], &words, 0)?;
    Some(search.best)
}

const ORBIT_DEPTH: usize = 5;

struct OrbitSearch {
    d: usize,
    clique: CliqueSearch,
    best: u32,
}

impl OrbitSearch {
    // `cands` are the words compatible with `code`, of weight at least
    // `min_weight`, that may still be added.
    fn branch(
        &mut self,
        cells: &[(usize, usize)],
        code: &mut Vec<u32>,
        cands: &[u32],
        min_weight: u32,
    ) -> Option<()> {
        let size = code.len() as u32;
        self.best = self.best.max(size);
        if size + cands.len() as u32 <= self.best {
            return Some(());
        }
        if code.len() > ORBIT_DEPTH {
            let d = self.d;
            let found = self.clique.max_clique(
                cands,
                |a, b| (a ^ b).count_ones() as usize >= d,
                self.best - size,
            )?;
            self.best = self.best.max(size + found);
            return Some(());
        }
        let masks: Vec<u32> = cells.iter().map(|&(start, len)| ((1u32 << len) - 1) << start).collect();
        let profile = |x: u32| -> Vec<u32> { masks.iter().map(|m| (x & m).count_ones()).collect() };
        // one representative per orbit: a prefix of ones in each cell
        let mut reps: Vec<(u32, Vec<u32>)> = cands
            .iter()
            .filter(|&&x| x.count_ones() >= min_weight)
            .map(|&x| profile(x))
            .map(|p| {
                let word = cells
                    .iter()
                    .zip(&p)
                    .map(|(&(start, _), &c)| ((1u32 << c) - 1) << start)
                    .sum();
                (word, p)
            })
            .collect();
        reps.sort_unstable_by(|a, b| (a.0.count_ones(), &a.1).cmp(&(b.0.count_ones(), &b.1)));
        reps.dedup();
        for (k, (word, p)) in reps.iter().enumerate() {
            let w = word.count_ones();
            // Codes whose lightest remaining word lies in an earlier orbit
            // of the same weight were searched in that branch.
            let earlier: Vec<&Vec<u32>> = reps[..k]
                .iter()
                .filter(|(x, _)| x.count_ones() == w)
                .map(|(_, q)| q)
                .collect();
            let next: Vec<u32> = cands
                .iter()
                .copied()
                .filter(|&x| {
                    x != *word
                        && x.count_ones() >= w
                        && (x ^ word).count_ones() as usize >= self.d
                        && (x.count_ones() > w || !earlier.contains(&&profile(x)))
                })
                .collect();
            let refined: Vec<(usize, usize)> = cells
                .iter()
                .zip(p)
                .flat_map(|(&(start, len), &c)| [(start, c as usize), (start + c as usize, len - c as usize)])
                .filter(|&(_, len)| len > 0)
                .collect();
            code.push(*word);
            let r = self.branch(&refined, code, &next, w);
            code.pop();
            r?;
        }
        Some(())
    }
}

struct CliqueSearch {
    budget: u64,
    nodes: u64,
}

type Bits = Vec<u64>;

fn first_bit(b: &[u64]) -> Option<usize> {
    b.iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + b[i].trailing_zeros() as usize)
}

fn is_empty(b: &[u64]) -> bool {
    b.iter().all(|&w| w == 0)
}

impl CliqueSearch {
    /// Size of a maximum clique of the graph on `items` with adjacency
    /// `adjacent`, or `None` if the node budget runs out. Only cliques
    /// larger than `lower` are searched for; `lower` is returned otherwise.
    fn max_clique<T: Copy>(
        &mut self,
        items: &[T],
        adjacent: impl Fn(T, T) -> bool,
        lower: u32,
    ) -> Option<u32> {
        let m = items.len();
        let words = m.div_ceil(64).max(1);
        let mut adj: Vec<Bits> = vec![vec![0; words]; m];
        for i in 0..m {
            for j in i + 1..m {
                if adjacent(items[i], items[j]) {
                    adj[i][j / 64] |= 1 << (j % 64);
                    adj[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut all = vec![0u64; words];
        for i in 0..m {
            all[i / 64] |= 1 << (i % 64);
        }
        let mut best = lower;
        self.expand(&adj, all, 0, &mut best)?;
        Some(best)
    }

    // Branch and bound with greedy colouring bounds: vertices are taken in
    // reverse colour order, and a vertex of colour k can extend the current
    // clique by at most k.
    fn expand(&mut self, adj: &[Bits], mut cands: Bits, size: u32, best: &mut u32) -> Option<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let (order, colors) = color_sort(adj, &cands);
        for i in (0..order.len()).rev() {
            if size + colors[i] <= *best {
                return Some(());
            }
            let v = order[i];
            let next: Bits = cands.iter().zip(&adj[v]).map(|(c, a)| c & a).collect();
            if is_empty(&next) {
                *best = (*best).max(size + 1);
            } else {
                self.expand(adj, next, size + 1, best)?;
            }
            cands[v / 64] &= !(1 << (v % 64));
        }
        Some(())
    }
}

// Greedy sequential colouring of `cands`; vertices listed by colour with
// non-decreasing colour numbers (1-based).
fn color_sort(adj: &[Bits], cands: &[u64]) -> (Vec<usize>, Vec<u32>) {
    let mut uncolored = cands.to_vec();
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut color = 0;
    while !is_empty(&uncolored) {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = first_bit(&avail) {
            order.push(v);
            colors.push(color);
            uncolored[v / 64] &= !(1 << (v % 64));
            avail[v / 64] &= !(1 << (v % 64));
            for (a, n) in avail.iter_mut().zip(&adj[v]) {
                *a &= !n;
            }
        }
    }
    (order, colors)
}
