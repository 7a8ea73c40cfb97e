//! Counterexample search for the theorems.
//!
//! Each registered property pairs an instance kind (a graph with a
//! consistent network, a graph alone, or an unsigned digraph) with a
//! hypothesis and a conclusion. Instances are drawn at random, one seed per
//! trial derived from the master seed, or enumerated exhaustively for small
//! orders. A violation is a counterexample to the theorem as implemented;
//! since the theorems are proven, any hit points at a bug.

use std::cell::OnceCell;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolnet::{
    antipodal_counterexample, check_theorem_strong_instance, count_consistent, disagreeing_cycle,
    enumerate_consistent,
    verify_uniqueness_with, BooleanNetwork, StrongVerdict, DEFAULT_MAX_INDEGREE,
};
use crate::boolnet::consistent::sample_with;
use crate::error::{Error, Result};
use crate::format::{parse_boolnet, parse_digraph, parse_sdigraph};
use crate::generate::{
    all_simple_graphs, random_with, strong_with_unique_negative_cycle, RandomParams,
};
use crate::kernels::{
    all_digraphs, generalized_condition, kernels, richardson_condition, to_network, Digraph, Kernel,
};
use crate::sgraph::{Sign, SignedCycle, SignedDigraph, TwoColoring, DEFAULT_CYCLE_CAP};
use crate::state::BitState;
use crate::structure::{
    analyze, check_thm_renewrule1, isolation_condition, two_coloring, unique_negative_cycle_arc,
    Limits, SpecialArcs,
};

/// Largest order of the exhaustive sweep over graphs and their networks.
pub const MAX_EXHAUSTIVE_NETWORK_ORDER: usize = 3;
/// Largest order of the exhaustive sweep over graphs or digraphs alone.
pub const MAX_EXHAUSTIVE_GRAPH_ORDER: usize = 4;

/// Verdict of one property on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The hypothesis fails.
    Vacuous,
    Holds,
    Violated(String),
}

impl Outcome {
    fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Violated(detail())
        }
    }
}

/// Facts about one graph shared by every network checked on it, computed
/// on first use.
pub struct GraphFacts<'g> {
    graph: &'g SignedDigraph,
    cap: usize,
    max_indegree: usize,
    cycles: OnceCell<Vec<SignedCycle>>,
    special: OnceCell<SpecialArcs<'g>>,
    fp_bound: OnceCell<u128>,
}

impl<'g> GraphFacts<'g> {
    pub fn new(graph: &'g SignedDigraph, cap: usize) -> Self {
        Self::with_max_indegree(graph, cap, DEFAULT_MAX_INDEGREE)
    }

    pub fn with_max_indegree(graph: &'g SignedDigraph, cap: usize, max_indegree: usize) -> Self {
        GraphFacts {
            graph,
            cap,
            max_indegree,
            cycles: OnceCell::new(),
            special: OnceCell::new(),
            fp_bound: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &'g SignedDigraph {
        self.graph
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Distinct in-neighbours allowed when sweeping the networks of the graph.
    pub fn max_indegree(&self) -> usize {
        self.max_indegree
    }

    pub fn cycles(&self) -> Result<&[SignedCycle]> {
        if self.cycles.get().is_none() {
            let _ = self.cycles.set(self.graph.enumerate_cycles(self.cap)?);
        }
        Ok(self.cycles.get().expect("just set"))
    }

    pub fn special_arcs(&self) -> Result<&SpecialArcs<'g>> {
        if self.special.get().is_none() {
            let _ = self.special.set(SpecialArcs::new(self.graph, self.cap)?);
        }
        Ok(self.special.get().expect("just set"))
    }

    /// `min(2^tau~+, A(n, g~+))` from the full analysis.
    pub fn fp_bound(&self) -> Result<u128> {
        if self.fp_bound.get().is_none() {
            let limits = Limits {
                cycle_cap: self.cap,
                ..Limits::default()
            };
            let _ = self.fp_bound.set(analyze(self.graph, &limits)?.fp_upper_bound);
        }
        Ok(*self.fp_bound.get().expect("just set"))
    }
}

/// How a property is evaluated.
#[derive(Clone, Copy)]
pub enum Check {
    /// On a graph and a network whose interaction graph it is.
    Network(fn(&GraphFacts<'_>, &BooleanNetwork) -> Result<Outcome>),
    /// On a graph alone; typically quantifies over all its networks.
    Graph(fn(&GraphFacts<'_>) -> Result<Outcome>),
    /// On an unsigned digraph.
    Digraph(fn(&Digraph, usize) -> Result<Outcome>),
}

/// A quantified claim that the harness tries to refute.
#[derive(Clone, Copy)]
pub struct Property {
    pub id: &'static str,
    pub summary: &'static str,
    pub check: Check,
    /// Exhaustive instances are drawn from strong graphs with exactly one
    /// negative cycle instead of all simple graphs.
    pub unique_negative_cycle: bool,
}

fn fixed(f: &BooleanNetwork) -> Result<Vec<BitState>> {
    f.fixed_points()
}

fn thm1(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    let fp = fixed(f)?;
    if fp.len() < 2 {
        return Ok(Outcome::Vacuous);
    }
    let positive: Vec<&SignedCycle> = facts.cycles()?.iter().filter(|c| c.is_positive()).collect();
    for (i, x) in fp.iter().enumerate() {
        for y in &fp[i + 1..] {
            if disagreeing_cycle(positive.iter().copied(), x, y).is_none() {
                return Ok(Outcome::Violated(format!(
                    "fixed points {x} and {y} agree somewhere on every positive cycle"
                )));
            }
        }
    }
    Ok(Outcome::Holds)
}

fn thm2(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    if facts.graph().has_negative_cycle() {
        return Ok(Outcome::Vacuous);
    }
    Ok(Outcome::check(!fixed(f)?.is_empty(), || {
        "no negative cycle but no fixed point".into()
    }))
}

fn at_most_one(f: &BooleanNetwork) -> Result<Outcome> {
    let k = fixed(f)?.len();
    Ok(Outcome::check(k <= 1, || format!("{k} fixed points")))
}

fn thm3(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    if !isolation_condition(facts.graph(), Sign::Positive, facts.cap())?.holds {
        return Ok(Outcome::Vacuous);
    }
    at_most_one(f)
}

fn thm4(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    if !check_thm_renewrule1(facts.graph(), facts.cap())?.holds {
        return Ok(Outcome::Vacuous);
    }
    at_most_one(f)
}

fn at_least_one(f: &BooleanNetwork) -> Result<Outcome> {
    Ok(Outcome::check(!fixed(f)?.is_empty(), || "no fixed point".into()))
}

fn thm5(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    if !isolation_condition(facts.graph(), Sign::Negative, facts.cap())?.holds {
        return Ok(Outcome::Vacuous);
    }
    at_least_one(f)
}

fn thm6(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    Ok(match check_theorem_strong_instance(facts.graph(), f, facts.cap())? {
        StrongVerdict::NotApplicable => Outcome::Vacuous,
        StrongVerdict::Holds { .. } => Outcome::Holds,
        StrongVerdict::Counterexample => Outcome::Violated("no fixed point x with x-bar fixed".into()),
    })
}

// The same theorem for every network of the graph at once.
fn thm6_all(facts: &GraphFacts<'_>) -> Result<Outcome> {
    let g = facts.graph();
    let negative: Vec<&SignedCycle> = facts.cycles()?.iter().filter(|c| !c.is_positive()).collect();
    let [neg] = negative.as_slice() else {
        return Ok(Outcome::Vacuous);
    };
    if !g.is_strong() || facts.cycles()?.len() == 1 {
        return Ok(Outcome::Vacuous);
    }
    Ok(match antipodal_counterexample(g, neg.arcs(), facts.max_indegree())? {
        None => Outcome::Holds,
        Some(f) => Outcome::Violated(format!("network without antipodal fixed points:\n{f}")),
    })
}

fn thm7(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    let fp = fixed(f)?;
    if fp.len() < 2 {
        return Ok(Outcome::Vacuous);
    }
    let report = verify_uniqueness_with(&fp, facts.special_arcs()?)?;
    Ok(match report.pairs.iter().find(|p| p.cycle.is_none()) {
        None => Outcome::Holds,
        Some(p) => Outcome::Violated(format!(
            "fixed points {} and {} differ on no positive cycle without special arc",
            p.x, p.y
        )),
    })
}

fn cor8(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    let k = fixed(f)?.len() as u128;
    let bound = facts.fp_bound()?;
    Ok(Outcome::check(k <= bound, || format!("{k} fixed points above the bound {bound}")))
}

fn lemma9(facts: &GraphFacts<'_>) -> Result<Outcome> {
    let g = facts.graph();
    let negatives = facts.cycles()?.iter().filter(|c| !c.is_positive()).count();
    if negatives != 1 || !g.is_strong() {
        return Ok(Outcome::Vacuous);
    }
    Ok(Outcome::check(unique_negative_cycle_arc(g, facts.cap())?.is_some(), || {
        "every arc of the negative cycle lies on a positive cycle".into()
    }))
}

fn harary(facts: &GraphFacts<'_>) -> Result<Outcome> {
    let g = facts.graph();
    let sym = g.symmetrize();
    let oracle = sym.enumerate_cycles(facts.cap())?.iter().any(|c| !c.is_positive());
    Ok(match two_coloring(g) {
        TwoColoring::Coloring(x) => {
            let sound = g.consistent_subgraph(&x)? == *g && g.consistent_subgraph(&x.complement())? == *g;
            Outcome::check(sound && !oracle, || {
                if sound {
                    format!("coloring {x} found but the symmetrized graph has a negative cycle")
                } else {
                    format!("{x} is not a two-coloring")
                }
            })
        }
        TwoColoring::NegativeCycle(c) => {
            let sound = !c.is_positive() && c.arcs().iter().all(|a| sym.has_arc(a));
            Outcome::check(sound && oracle, || {
                if sound {
                    "no coloring reported but the symmetrized graph is balanced".into()
                } else {
                    format!("witness {c} is not a negative cycle of the symmetrized graph")
                }
            })
        }
    })
}

fn richardson(d: &Digraph, _cap: usize) -> Result<Outcome> {
    if !richardson_condition(d) {
        return Ok(Outcome::Vacuous);
    }
    Ok(Outcome::check(!kernels(d)?.is_empty(), || "no odd cycle but no kernel".into()))
}

fn richardson_gen(d: &Digraph, cap: usize) -> Result<Outcome> {
    if !generalized_condition(d, cap)? {
        return Ok(Outcome::Vacuous);
    }
    Ok(Outcome::check(!kernels(d)?.is_empty(), || "condition holds but no kernel".into()))
}

fn kernel_corr(d: &Digraph, _cap: usize) -> Result<Outcome> {
    let ks = kernels(d)?;
    let mut decoded: Vec<Kernel> = to_network(d).fixed_points()?.iter().map(Kernel::from_indicator).collect();
    decoded.sort();
    Ok(Outcome::check(ks == decoded, || {
        format!("kernels {ks:?} but fixed points decode to {decoded:?}")
    }))
}

const fn net(id: &'static str, summary: &'static str, f: fn(&GraphFacts<'_>, &BooleanNetwork) -> Result<Outcome>) -> Property {
    Property {
        id,
        summary,
        check: Check::Network(f),
        unique_negative_cycle: false,
    }
}

/// Every registered property, in id order.
pub const REGISTRY: [Property; 13] = [
    net("thm1", "distinct fixed points differ on all of some positive cycle", thm1),
    net("thm2", "no negative cycle implies a fixed point", thm2),
    net("thm3", "positive cycles isolated by arcs imply at most one fixed point", thm3),
    net("thm4", "positive cycles isolated at vertices imply at most one fixed point", thm4),
    net("thm5", "negative cycles isolated by arcs imply a fixed point", thm5),
    net("thm6", "one uncanalized negative cycle in a strong graph gives antipodal fixed points", thm6),
    net("thm7", "distinct fixed points differ on a positive cycle without special arc", thm7),
    net("cor8", "fixed points are at most min(2^tau~+, A(n, g~+))", cor8),
    Property {
        id: "lemma9",
        summary: "a unique negative cycle in a strong graph has an arc on no positive cycle",
        check: Check::Graph(lemma9),
        unique_negative_cycle: true,
    },
    Property {
        id: "harary",
        summary: "a two-coloring exists iff the symmetrized graph has no negative cycle",
        check: Check::Graph(harary),
        unique_negative_cycle: false,
    },
    Property {
        id: "richardson",
        summary: "a digraph without odd cycle has a kernel",
        check: Check::Digraph(richardson),
        unique_negative_cycle: false,
    },
    Property {
        id: "richardson-gen",
        summary: "odd cycles isolated by arcs imply a kernel",
        check: Check::Digraph(richardson_gen),
        unique_negative_cycle: false,
    },
    Property {
        id: "kernel-corr",
        summary: "kernels are the fixed points of the kernel network",
        check: Check::Digraph(kernel_corr),
        unique_negative_cycle: false,
    },
];

pub fn property(id: &str) -> Result<Property> {
    REGISTRY
        .iter()
        .find(|p| p.id == id)
        .copied()
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

fn mutant_thm5(facts: &GraphFacts<'_>, f: &BooleanNetwork) -> Result<Outcome> {
    if !isolation_condition(facts.graph(), Sign::Positive, facts.cap())?.holds {
        return Ok(Outcome::Vacuous);
    }
    at_least_one(f)
}

/// A deliberately wrong variant of `thm5` with the cycle signs exchanged in
/// its hypothesis. The harness must refute it; it is not registered.
pub fn sign_flipped_thm5() -> Property {
    net("thm5-flipped", "positive cycles isolated by arcs imply a fixed point (false)", mutant_thm5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Random,
    Exhaustive,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Mode::Random),
            "exhaustive" => Ok(Mode::Exhaustive),
            _ => Err(Error::BadParams(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyConfig {
    pub mode: Mode,
    /// Random instances to draw; ignored by the exhaustive mode.
    pub trials: u64,
    pub seed: u64,
    /// Orders are drawn from (or swept over) `1..=max_n`.
    pub max_n: usize,
    pub cycle_cap: usize,
    /// Distinct in-neighbours per vertex; sampled graphs above it are redrawn.
    pub max_indegree: usize,
    /// Counterexamples kept in the report; all are counted.
    pub keep: usize,
}

impl Default for FalsifyConfig {
    fn default() -> Self {
        FalsifyConfig {
            mode: Mode::Random,
            trials: 1000,
            seed: 0,
            max_n: 5,
            cycle_cap: DEFAULT_CYCLE_CAP,
            max_indegree: DEFAULT_MAX_INDEGREE,
            keep: 8,
        }
    }
}

/// A refuting instance in the text formats, so it can be re-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Trial index (random) or instance index (exhaustive).
    pub index: u64,
    pub graph: Option<String>,
    pub network: Option<String>,
    pub digraph: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub theorem: String,
    pub mode: Mode,
    pub seed: u64,
    pub max_n: usize,
    /// Instances examined.
    pub trials: u64,
    /// Instances satisfying the hypothesis.
    pub applicable: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_secs: f64,
}

impl FalsifyReport {
    /// `key = value` lines; the counterexamples follow as indented blocks.
    /// Everything except `wall_time_secs` depends only on the configuration.
    pub fn to_structured(&self) -> String {
        let mut s = format!(
            "# schema signet-falsify/1\ntheorem = {}\nmode = {}\nseed = {}\nmax_n = {}\ntrials = {}\napplicable = {}\ncounterexamples = {}\n",
            self.theorem,
            match self.mode {
                Mode::Random => "random",
                Mode::Exhaustive => "exhaustive",
            },
            self.seed,
            self.max_n,
            self.trials,
            self.applicable,
            self.counterexample_count,
        );
        for c in &self.counterexamples {
            s.push_str(&format!("\n# counterexample {}: {}\n", c.index, c.detail.lines().next().unwrap_or("")));
            for text in [&c.graph, &c.network, &c.digraph].into_iter().flatten() {
                s.push_str(text);
            }
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    trials: u64,
    applicable: u64,
    violations: u64,
    kept: Vec<Counterexample>,
}

impl Tally {
    fn record(&mut self, outcome: Outcome, keep: usize, make: impl FnOnce(String) -> Counterexample) {
        self.trials += 1;
        match outcome {
            Outcome::Vacuous => {}
            Outcome::Holds => self.applicable += 1,
            Outcome::Violated(detail) => {
                self.applicable += 1;
                self.violations += 1;
                if self.kept.len() < keep {
                    self.kept.push(make(detail));
                }
            }
        }
    }

    fn merge(mut self, other: Tally, keep: usize) -> Tally {
        self.trials += other.trials;
        self.applicable += other.applicable;
        self.violations += other.violations;
        self.kept.extend(other.kept);
        self.kept.sort_by_key(|c| c.index);
        self.kept.truncate(keep);
        self
    }
}

/// Seed of trial `index`: a SplitMix64 step from the master seed.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn counterexample(index: u64, g: Option<&SignedDigraph>, f: Option<&BooleanNetwork>, d: Option<&Digraph>, detail: String) -> Counterexample {
    Counterexample {
        index,
        graph: g.map(|g| g.to_string()),
        network: f.map(|f| f.to_string()),
        digraph: d.map(|d| d.to_string()),
        detail,
    }
}

fn fits(g: &SignedDigraph, max_indegree: usize) -> bool {
    g.vertices().all(|v| g.in_neighbors(v).len() <= max_indegree)
}

// A random graph of order in 1..=max_n, with a consistent network when
// `with_network`; graphs without one are redrawn.
fn random_instance(rng: &mut ChaCha8Rng, config: &FalsifyConfig, with_network: bool) -> (SignedDigraph, Option<BooleanNetwork>) {
    loop {
        let n = rng.gen_range(1..=config.max_n);
        let g = random_with(&RandomParams::new(n), rng);
        if !fits(&g, config.max_indegree) {
            continue;
        }
        if !with_network {
            return (g, None);
        }
        if let Ok(f) = sample_with(&g, rng) {
            return (g, Some(f));
        }
    }
}

fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let p = (2.0 / n as f64).min(1.0);
    let arcs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (1..=n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, arcs).expect("arcs are distinct")
}

fn check_limits(p: &Property, config: &FalsifyConfig) -> Result<()> {
    if config.max_n == 0 {
        return Err(Error::BadParams("max_n must be at least 1".into()));
    }
    if config.mode == Mode::Exhaustive {
        let limit = match p.check {
            Check::Network(_) => MAX_EXHAUSTIVE_NETWORK_ORDER,
            Check::Graph(_) | Check::Digraph(_) => MAX_EXHAUSTIVE_GRAPH_ORDER,
        };
        if config.max_n > limit {
            return Err(Error::LimitExceeded {
                what: "order for an exhaustive sweep",
                limit,
                actual: config.max_n,
            });
        }
    }
    Ok(())
}

fn run_random(p: &Property, config: &FalsifyConfig) -> Result<Tally> {
    let keep = config.keep;
    (0..config.trials)
        .into_par_iter()
        .map(|i| -> Result<Tally> {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, i));
            let mut t = Tally::default();
            match p.check {
                Check::Network(check) => {
                    let (g, f) = random_instance(&mut rng, config, true);
                    let f = f.expect("network requested");
                    let out = check(&GraphFacts::with_max_indegree(&g, config.cycle_cap, config.max_indegree), &f)?;
                    t.record(out, keep, |d| counterexample(i, Some(&g), Some(&f), None, d));
                }
                Check::Graph(check) => {
                    let (g, _) = random_instance(&mut rng, config, false);
                    let out = check(&GraphFacts::with_max_indegree(&g, config.cycle_cap, config.max_indegree))?;
                    t.record(out, keep, |d| counterexample(i, Some(&g), None, None, d));
                }
                Check::Digraph(check) => {
                    let d = random_digraph(&mut rng, config.max_n);
                    let out = check(&d, config.cycle_cap)?;
                    t.record(out, keep, |x| counterexample(i, None, None, Some(&d), x));
                }
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b, keep)))
}

fn run_exhaustive(p: &Property, config: &FalsifyConfig) -> Result<Tally> {
    let keep = config.keep;
    let cap = config.cycle_cap;
    let mut total = Tally::default();
    for n in 1..=config.max_n {
        // instance indices continue across orders
        let offset = total.trials;
        let tally = match p.check {
            Check::Digraph(check) => all_digraphs(n)
                .collect::<Vec<_>>()
                .into_par_iter()
                .enumerate()
                .map(|(i, d)| -> Result<Tally> {
                    let mut t = Tally::default();
                    let idx = offset + i as u64;
                    t.record(check(&d, cap)?, keep, |x| counterexample(idx, None, None, Some(&d), x));
                    Ok(t)
                })
                .try_reduce(Tally::default, |a, b| Ok(a.merge(b, keep)))?,
            Check::Graph(check) => {
                let graphs: Vec<SignedDigraph> = if p.unique_negative_cycle {
                    strong_with_unique_negative_cycle(n)
                } else {
                    all_simple_graphs(n).collect()
                };
                let graphs: Vec<SignedDigraph> =
                    graphs.into_iter().filter(|g| fits(g, config.max_indegree)).collect();
                graphs
                    .into_par_iter()
                    .enumerate()
                    .map(|(i, g)| -> Result<Tally> {
                        let mut t = Tally::default();
                        let idx = offset + i as u64;
                        let out = check(&GraphFacts::with_max_indegree(&g, cap, config.max_indegree))?;
                        t.record(out, keep, |x| counterexample(idx, Some(&g), None, None, x));
                        Ok(t)
                    })
                    .try_reduce(Tally::default, |a, b| Ok(a.merge(b, keep)))?
            }
            Check::Network(check) => {
                let graphs: Vec<SignedDigraph> =
                    all_simple_graphs(n).filter(|g| fits(g, config.max_indegree)).collect();
                graphs
                    .into_par_iter()
                    .enumerate()
                    .map(|(i, g)| -> Result<Tally> {
                        let facts = GraphFacts::with_max_indegree(&g, cap, config.max_indegree);
                        let mut t = Tally::default();
                        // index of the graph; the network is in the report
                        let idx = offset + i as u64;
                        for f in enumerate_consistent(&g, config.max_indegree)? {
                            let out = check(&facts, &f)?;
                            t.record(out, keep, |x| counterexample(idx, Some(&g), Some(&f), None, x));
                        }
                        Ok(t)
                    })
                    .try_reduce(Tally::default, |a, b| Ok(a.merge(b, keep)))?
            }
        };
        total = total.merge(tally, keep);
    }
    Ok(total)
}

/// Runs `p` as configured.
pub fn falsify_property(p: &Property, config: &FalsifyConfig) -> Result<FalsifyReport> {
    check_limits(p, config)?;
    let start = Instant::now();
    let tally = match config.mode {
        Mode::Random => run_random(p, config)?,
        Mode::Exhaustive => run_exhaustive(p, config)?,
    };
    Ok(FalsifyReport {
        theorem: p.id.to_string(),
        mode: config.mode,
        seed: config.seed,
        max_n: config.max_n,
        trials: tally.trials,
        applicable: tally.applicable,
        counterexample_count: tally.violations,
        counterexamples: tally.kept,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Runs the registered property `id`. The exhaustive `thm6` sweep
/// quantifies over all networks of each graph at once, which reaches
/// order 4.
pub fn falsify(id: &str, config: &FalsifyConfig) -> Result<FalsifyReport> {
    let p = property(id)?;
    if id == "thm6" && config.mode == Mode::Exhaustive {
        return falsify_property(&thm6_all_networks(), config);
    }
    falsify_property(&p, config)
}

/// Re-evaluates a counterexample from its text form.
pub fn recheck(p: &Property, c: &Counterexample, cap: usize) -> Result<Outcome> {
    let missing = |what: &str| Error::BadParams(format!("counterexample has no {what}"));
    match p.check {
        Check::Network(check) => {
            let g = parse_sdigraph(c.graph.as_deref().ok_or_else(|| missing("graph"))?)?;
            let f = parse_boolnet(c.network.as_deref().ok_or_else(|| missing("network"))?)?;
            check(&GraphFacts::new(&g, cap), &f)
        }
        Check::Graph(check) => {
            let g = parse_sdigraph(c.graph.as_deref().ok_or_else(|| missing("graph"))?)?;
            check(&GraphFacts::new(&g, cap))
        }
        Check::Digraph(check) => {
            let d = parse_digraph(c.digraph.as_deref().ok_or_else(|| missing("digraph"))?)?;
            check(&d, cap)
        }
    }
}

/// Largest number of networks [`check_networks`] will enumerate.
pub const MAX_CHECKED_NETWORKS: u128 = 1 << 22;

/// Result of checking one property on every network of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSweep {
    pub networks: u64,
    pub applicable: u64,
    pub violations: u64,
    /// The first violating network and what went wrong.
    pub first: Option<(BooleanNetwork, String)>,
}

/// Checks a network property on every network with interaction graph
/// `facts.graph()`.
pub fn check_networks(
    check: fn(&GraphFacts<'_>, &BooleanNetwork) -> Result<Outcome>,
    facts: &GraphFacts<'_>,
) -> Result<NetworkSweep> {
    let count = count_consistent(facts.graph())?;
    if count > MAX_CHECKED_NETWORKS {
        return Err(Error::LimitExceeded {
            what: "consistent networks to check",
            limit: MAX_CHECKED_NETWORKS as usize,
            actual: usize::try_from(count).unwrap_or(usize::MAX),
        });
    }
    let mut sweep = NetworkSweep {
        networks: 0,
        applicable: 0,
        violations: 0,
        first: None,
    };
    for f in enumerate_consistent(facts.graph(), facts.max_indegree())? {
        sweep.networks += 1;
        match check(facts, &f)? {
            Outcome::Vacuous => {}
            Outcome::Holds => sweep.applicable += 1,
            Outcome::Violated(detail) => {
                sweep.applicable += 1;
                sweep.violations += 1;
                if sweep.first.is_none() {
                    sweep.first = Some((f, detail));
                }
            }
        }
    }
    Ok(sweep)
}

/// Exhaustive form of `thm6`: for every strong simple graph with one
/// negative cycle and order `<= max_n`, no network leaving that cycle
/// uncanalized lacks an antipodal pair of fixed points.
pub fn thm6_all_networks() -> Property {
    Property {
        id: "thm6",
        summary: "one uncanalized negative cycle in a strong graph gives antipodal fixed points",
        check: Check::Graph(thm6_all),
        unique_negative_cycle: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random(trials: u64, max_n: usize) -> FalsifyConfig {
        FalsifyConfig {
            trials,
            max_n,
            seed: 7,
            ..FalsifyConfig::default()
        }
    }

    #[test]
    fn registry_ids_are_unique_and_known() {
        let ids: Vec<&str> = REGISTRY.iter().map(|p| p.id).collect();
        assert_eq!(
            ids,
            [
                "thm1", "thm2", "thm3", "thm4", "thm5", "thm6", "thm7", "cor8", "lemma9", "harary",
                "richardson", "richardson-gen", "kernel-corr"
            ]
        );
        assert!(matches!(falsify("thm99", &random(1, 2)), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn seeds_are_spread() {
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn every_property_survives_a_short_random_run() {
        for p in REGISTRY {
            let r = falsify_property(&p, &random(200, 4)).unwrap();
            assert_eq!(r.trials, 200, "{}", p.id);
            assert_eq!(r.counterexample_count, 0, "{}: {:?}", p.id, r.counterexamples);
        }
    }

    #[test]
    fn random_runs_are_deterministic() {
        let a = falsify("thm7", &random(300, 4)).unwrap();
        let b = falsify("thm7", &random(300, 4)).unwrap();
        assert_eq!(a.to_structured(), b.to_structured());
        assert!(a.applicable > 0);
    }

    #[test]
    fn flipped_checker_is_refuted_and_counterexamples_reload() {
        let p = sign_flipped_thm5();
        let r = falsify_property(&p, &random(2000, 4)).unwrap();
        assert!(r.counterexample_count > 0);
        for c in &r.counterexamples {
            assert!(matches!(recheck(&p, c, DEFAULT_CYCLE_CAP).unwrap(), Outcome::Violated(_)));
        }
    }

    #[test]
    fn exhaustive_sweeps_small_orders() {
        let config = FalsifyConfig {
            mode: Mode::Exhaustive,
            max_n: 2,
            ..FalsifyConfig::default()
        };
        let r = falsify("thm1", &config).unwrap();
        assert_eq!(r.counterexample_count, 0);
        assert!(r.trials > 81);
        let r = falsify("kernel-corr", &FalsifyConfig { max_n: 3, ..config.clone() }).unwrap();
        assert_eq!(r.trials, 2 + 16 + 512);
        assert_eq!(r.applicable, r.trials);
        let r = falsify_property(&thm6_all_networks(), &FalsifyConfig { max_n: 3, ..config.clone() }).unwrap();
        assert_eq!(r.counterexample_count, 0);
        assert!(r.applicable > 0);
        assert!(matches!(
            falsify("thm1", &FalsifyConfig { max_n: 4, ..config }),
            Err(Error::LimitExceeded { .. })
        ));
    }
}
