//! Boolean networks `f: {0,1}^n -> {0,1}^n` given by local truth tables.
//!
//! A local function lists its inputs `u1, .., uk` and a table of length
//! `2^k`; entry `j` is the value on the assignment where `x_{u1}` is the
//! most significant bit of `j`. Packed states (`u64`) put `x_1` in the most
//! significant of their `n` bits, so they agree with [`BitState::index`].

pub(crate) mod consistent;
mod sweep;
mod theorems;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use consistent::{
    candidates, count_consistent, enumerate_consistent, sample_consistent, ConsistentNetworks,
    DEFAULT_MAX_INDEGREE,
};
pub use sweep::{antipodal_counterexample, max_fixed_points};
pub use theorems::{
    check_theorem_strong_instance, disagreeing_cycle, verify_uniqueness_theorem, verify_uniqueness_with,
    PairWitness,
    StrongVerdict, UniquenessReport,
};

use crate::error::{Error, Result};
use crate::sgraph::{Arc, Sign, SignedDigraph};
use crate::state::BitState;

/// Largest `n` for full state-space scans.
pub const MAX_SCAN_ORDER: usize = 24;

/// Largest `n` for attractor computation.
pub const MAX_ATTRACTOR_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalFunction {
    inputs: Vec<usize>,
    table: Vec<bool>,
}

impl LocalFunction {
    /// Fails unless `table.len() == 2^inputs.len()` and inputs are distinct.
    pub fn new(inputs: Vec<usize>, table: Vec<bool>) -> Result<Self> {
        let k = inputs.len();
        if k >= usize::BITS as usize - 1 || table.len() != 1 << k {
            return Err(Error::InvalidLocalFunction {
                vertex: 0,
                reason: format!("{} inputs need a table of length 2^{k}, got {}", k, table.len()),
            });
        }
        let mut sorted = inputs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidLocalFunction {
                vertex: 0,
                reason: "repeated input".into(),
            });
        }
        Ok(LocalFunction { inputs, table })
    }

    pub fn constant(value: bool) -> Self {
        LocalFunction {
            inputs: Vec::new(),
            table: vec![value],
        }
    }

    /// `x_u`.
    pub fn copy_of(u: usize) -> Self {
        LocalFunction {
            inputs: vec![u],
            table: vec![false, true],
        }
    }

    /// `not x_u`.
    pub fn negation_of(u: usize) -> Self {
        LocalFunction {
            inputs: vec![u],
            table: vec![true, false],
        }
    }

    /// Table entry `j` is bit `j` of `code`; needs `inputs.len() <= 6`.
    pub fn from_code(inputs: Vec<usize>, code: u64) -> Self {
        let k = inputs.len();
        assert!(k <= 6, "codes hold tables of at most six inputs");
        let table = (0..1usize << k).map(|j| (code >> j) & 1 == 1).collect();
        LocalFunction { inputs, table }
    }

    /// Tabulates `f` on the input assignments in table order.
    pub fn from_fn(inputs: Vec<usize>, f: impl Fn(&[bool]) -> bool) -> Self {
        let k = inputs.len();
        let table = (0..1usize << k)
            .map(|j| {
                let bits: Vec<bool> = (0..k).map(|i| (j >> (k - 1 - i)) & 1 == 1).collect();
                f(&bits)
            })
            .collect();
        LocalFunction { inputs, table }
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    fn index(&self, x: &BitState) -> usize {
        self.inputs
            .iter()
            .fold(0, |j, &u| (j << 1) | usize::from(x.get(u)))
    }

    fn index_packed(&self, n: usize, s: u64) -> usize {
        self.inputs
            .iter()
            .fold(0, |j, &u| (j << 1) | ((s >> (n - u)) & 1) as usize)
    }

    pub fn eval(&self, x: &BitState) -> bool {
        self.table[self.index(x)]
    }

    pub fn eval_packed(&self, n: usize, s: u64) -> bool {
        self.table[self.index_packed(n, s)]
    }

    /// Whether an arc of sign `sign` from `u` into this function is
    /// canalized: some value `c` of `x_u` (for `-`, its complement) forces
    /// the output to `c`. `None` when there is no such arc.
    pub fn canalizes(&self, u: usize, sign: Sign) -> Option<bool> {
        let pos = self.inputs.iter().position(|&w| w == u)?;
        let (p, q) = self.dependence(pos);
        let present = match sign {
            Sign::Positive => p,
            Sign::Negative => q,
        };
        if !present {
            return None;
        }
        let bit = 1 << (self.arity() - 1 - pos);
        Some([false, true].into_iter().any(|c| {
            let input = match sign {
                Sign::Positive => c,
                Sign::Negative => !c,
            };
            (0..self.table.len())
                .filter(|&j| (j & bit != 0) == input)
                .all(|j| self.table[j] == c)
        }))
    }

    /// Signs of the dependence on input position `i`, as (positive, negative).
    fn dependence(&self, i: usize) -> (bool, bool) {
        let bit = 1 << (self.arity() - 1 - i);
        let (mut pos, mut neg) = (false, false);
        for j in (0..self.table.len()).filter(|j| j & bit == 0) {
            match (self.table[j], self.table[j | bit]) {
                (false, true) => pos = true,
                (true, false) => neg = true,
                _ => {}
            }
        }
        (pos, neg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BooleanNetwork {
    n: usize,
    locals: Vec<LocalFunction>,
}

impl BooleanNetwork {
    /// `locals[v-1]` is `f_v`; every input must lie in `1..=n`.
    pub fn new(locals: Vec<LocalFunction>) -> Result<Self> {
        let n = locals.len();
        for (i, f) in locals.iter().enumerate() {
            if let Some(&u) = f.inputs.iter().find(|&&u| u == 0 || u > n) {
                return Err(Error::InvalidLocalFunction {
                    vertex: i + 1,
                    reason: format!("input {u} is not a vertex of 1..={n}"),
                });
            }
        }
        Ok(BooleanNetwork { n, locals })
    }

    /// `f_v = x_v` for every `v`.
    pub fn identity(n: usize) -> Self {
        BooleanNetwork {
            n,
            locals: (1..=n).map(LocalFunction::copy_of).collect(),
        }
    }

    pub fn constant(c: &BitState) -> Self {
        BooleanNetwork {
            n: c.len(),
            locals: c.bits().iter().map(|&b| LocalFunction::constant(b)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `f_v`.
    pub fn local(&self, v: usize) -> &LocalFunction {
        &self.locals[v - 1]
    }

    pub fn locals(&self) -> &[LocalFunction] {
        &self.locals
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::InvalidVertex {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn eval(&self, x: &BitState) -> Result<BitState> {
        x.ensure_len(self.n)?;
        Ok(BitState::from_bits(self.locals.iter().map(|f| f.eval(x)).collect()))
    }

    /// `f` on packed states; needs `n <= 64`.
    pub fn eval_packed(&self, s: u64) -> u64 {
        let n = self.n;
        self.locals
            .iter()
            .fold(0, |acc, f| (acc << 1) | u64::from(f.eval_packed(n, s)))
    }

    /// `f_v(x with x_u = 1) - f_v(x with x_u = 0)`.
    pub fn derivative(&self, v: usize, u: usize, x: &BitState) -> Result<i8> {
        self.check_vertex(v)?;
        self.check_vertex(u)?;
        x.ensure_len(self.n)?;
        let f = self.local(v);
        Ok(i8::from(f.eval(&x.with(u, true))) - i8::from(f.eval(&x.with(u, false))))
    }

    /// Arc `(u -> v, +)` (resp. `-`) when the derivative of `f_v` in `x_u`
    /// is positive (resp. negative) somewhere.
    pub fn interaction_graph(&self) -> SignedDigraph {
        let mut arcs = Vec::new();
        for (i, f) in self.locals.iter().enumerate() {
            for (pos, &u) in f.inputs.iter().enumerate() {
                let (p, q) = f.dependence(pos);
                if p {
                    arcs.push(Arc::pos(u, i + 1));
                }
                if q {
                    arcs.push(Arc::neg(u, i + 1));
                }
            }
        }
        SignedDigraph::new(self.n, arcs).expect("inputs are distinct vertices")
    }

    fn check_scan(&self, limit: usize) -> Result<()> {
        if self.n > limit {
            return Err(Error::LimitExceeded {
                what: "network order for state-space scans",
                limit,
                actual: self.n,
            });
        }
        Ok(())
    }

    /// Packed fixed points in increasing order.
    pub fn fixed_points_packed(&self) -> Result<Vec<u64>> {
        self.check_scan(MAX_SCAN_ORDER)?;
        Ok((0..1u64 << self.n).filter(|&s| self.eval_packed(s) == s).collect())
    }

    /// Every `x` with `f(x) = x`, in increasing binary order.
    pub fn fixed_points(&self) -> Result<Vec<BitState>> {
        Ok(self
            .fixed_points_packed()?
            .into_iter()
            .map(|s| BitState::from_index(self.n, s))
            .collect())
    }

    /// Whether `f` canalizes the arc `a` of its interaction graph.
    pub fn is_canalized(&self, a: &Arc) -> Result<bool> {
        self.check_vertex(a.target)?;
        self.local(a.target)
            .canalizes(a.source, a.sign)
            .ok_or(Error::NotAnInteraction(*a))
    }

    /// Fixes `f_v` to the given constant for each `(v, value)`.
    pub fn pin(&self, values: &[(usize, bool)]) -> Result<BooleanNetwork> {
        let mut locals = self.locals.clone();
        for &(v, b) in values {
            self.check_vertex(v)?;
            locals[v - 1] = LocalFunction::constant(b);
        }
        Ok(BooleanNetwork { n: self.n, locals })
    }

    /// Terminal strong components of the asynchronous state graph, each
    /// sorted, listed by their smallest state.
    pub fn attractors(&self) -> Result<Vec<Vec<BitState>>> {
        self.check_scan(MAX_ATTRACTOR_ORDER)?;
        let n = self.n;
        Ok(self
            .attractors_packed()
            .into_iter()
            .map(|a| a.into_iter().map(|s| BitState::from_index(n, s)).collect())
            .collect())
    }

    fn attractors_packed(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        let size = 1usize << n;
        let image: Vec<u64> = (0..size as u64).map(|s| self.eval_packed(s)).collect();
        // successors of s: s with bit v flipped wherever f_v(s) != s_v
        let succ = |s: usize| {
            let diff = image[s] ^ s as u64;
            (0..n).filter(move |b| diff >> b & 1 == 1).map(move |b| s ^ (1 << b))
        };
        const UNVISITED: u32 = u32::MAX;
        let mut index = vec![UNVISITED; size];
        let mut low = vec![0u32; size];
        let mut on_stack = vec![false; size];
        let mut comp = vec![UNVISITED; size];
        let mut stack = Vec::new();
        let mut components: Vec<Vec<u64>> = Vec::new();
        let mut counter = 0u32;
        let mut call: Vec<(usize, usize)> = Vec::new();
        for root in 0..size {
            if index[root] != UNVISITED {
                continue;
            }
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            call.push((root, 0));
            while let Some(&mut (s, ref mut bit)) = call.last_mut() {
                let diff = image[s] ^ s as u64;
                if *bit < n {
                    let b = *bit;
                    *bit += 1;
                    if diff >> b & 1 == 0 {
                        continue;
                    }
                    let t = s ^ (1 << b);
                    if index[t] == UNVISITED {
                        index[t] = counter;
                        low[t] = counter;
                        counter += 1;
                        stack.push(t);
                        on_stack[t] = true;
                        call.push((t, 0));
                    } else if on_stack[t] {
                        low[s] = low[s].min(index[t]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[s]);
                }
                if low[s] == index[s] {
                    let id = components.len() as u32;
                    let mut members = Vec::new();
                    loop {
                        let t = stack.pop().expect("tarjan stack underflow");
                        on_stack[t] = false;
                        comp[t] = id;
                        members.push(t as u64);
                        if t == s {
                            break;
                        }
                    }
                    components.push(members);
                }
            }
        }
        let mut terminal = vec![true; components.len()];
        for s in 0..size {
            if succ(s).any(|t| comp[t] != comp[s]) {
                terminal[comp[s] as usize] = false;
            }
        }
        let mut out: Vec<Vec<u64>> = components
            .into_iter()
            .zip(terminal)
            .filter(|(_, t)| *t)
            .map(|(mut c, _)| {
                c.sort_unstable();
                c
            })
            .collect();
        out.sort();
        out
    }
}

/// `x <=_v y`: `x` below `y` on positive in-neighbours of `v` and above it
/// on negative ones.
pub fn leq_v(g: &SignedDigraph, v: usize, x: &BitState, y: &BitState) -> Result<bool> {
    if v == 0 || v > g.order() {
        return Err(Error::InvalidVertex {
            vertex: v,
            order: g.order(),
        });
    }
    x.ensure_len(g.order())?;
    y.ensure_len(g.order())?;
    Ok(g.in_arcs(v).all(|a| {
        let (xu, yu) = (x.get(a.source), y.get(a.source));
        match a.sign {
            Sign::Positive => xu <= yu,
            Sign::Negative => xu >= yu,
        }
    }))
}

impl fmt::Display for BooleanNetwork {
    /// The `boolnet` text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "boolnet {}", self.n)?;
        for (i, local) in self.locals.iter().enumerate() {
            write!(f, "{} :", i + 1)?;
            for u in &local.inputs {
                write!(f, " {u}")?;
            }
            f.write_str(" | ")?;
            for &b in &local.table {
                f.write_str(if b { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
