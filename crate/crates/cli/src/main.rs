//! `signet`: command-line front end for the signet library.
//!
//! Exit codes: 0 when the command succeeds and every checked claim holds,
//! 1 when a claim is violated, 2 on usage, parse or limit errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use signet::boolnet::BooleanNetwork;
use signet::bounds;
use signet::falsify::{
    self, check_networks, property, thm6_all_networks, Check, FalsifyConfig, FalsifyReport, GraphFacts,
    Mode, Outcome, REGISTRY,
};
use signet::format::{parse_boolnet, parse_digraph, parse_sdigraph};
use signet::generate::{self, RandomParams};
use signet::kernels::{self, Digraph};
use signet::sgraph::DEFAULT_CYCLE_CAP;
use signet::structure::{self, Limits, REPORT_SCHEMA};
use signet::{Error, Sign, SignedDigraph};

#[derive(Parser)]
#[command(name = "signet", version, about = "Cycle structure and fixed points of signed interaction graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Output layout; `structured` is a stable `key = value` schema.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Maximum number of cycles enumerated per graph.
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP, value_parser = positive)]
    cycle_cap: usize,
    /// Maximum number of distinct in-neighbours when enumerating networks.
    #[arg(long, global = true, default_value_t = 4, value_parser = positive)]
    max_indegree: usize,
    /// Maximum vertex count for the exact transversal searches.
    #[arg(long, global = true, default_value_t = 15, value_parser = positive)]
    max_order: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle parameters, special-arc conditions and the fixed-point bound.
    Analyze { graph: PathBuf },
    /// Fixed points of a network.
    FixedPoints { network: PathBuf },
    /// Attractors of the asynchronous dynamics of a network.
    Attractors { network: PathBuf },
    /// Checks one registered claim on a graph, and on a network if given;
    /// without a network every consistent network of the graph is checked.
    Check {
        #[arg(long)]
        theorem: String,
        /// A signed digraph, or an unsigned digraph for the kernel claims.
        graph: PathBuf,
        network: Option<PathBuf>,
    },
    /// Coding-theory bounds behind the fixed-point bound of a graph.
    Bounds { graph: PathBuf },
    /// Kernels of an unsigned digraph and the conditions forcing one.
    Kernels { digraph: PathBuf },
    /// Searches for counterexamples to a registered claim.
    Falsify(FalsifyArgs),
    /// Writes a graph of one of the built-in families.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        /// Output path; standard output when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FalsifyArgs {
    /// Claim id; `list` prints the registry.
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5, value_parser = positive)]
    max_n: usize,
    /// Sweep every instance of order <= max-n instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Counterexamples printed in full.
    #[arg(long, default_value_t = 8)]
    keep: usize,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Positive triangles chained through even vertices, negative loops
    /// on the odd vertices from 3.
    Figure1 { n: usize },
    /// Two cycles sharing vertex 1.
    DoubleCycle {
        len1: usize,
        #[arg(value_parser = sign)]
        sign1: Sign,
        len2: usize,
        #[arg(value_parser = sign)]
        sign2: Sign,
    },
    /// Every signed arc drawn independently.
    Random {
        n: usize,
        /// Expected arcs per ordered pair; 2/n by default.
        #[arg(long)]
        density: Option<f64>,
        /// Share of the density given to negative arcs.
        #[arg(long, default_value_t = 0.5)]
        negative_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(k) => Ok(k),
        Err(e) => Err(e.to_string()),
    }
}

fn sign(s: &str) -> Result<Sign, String> {
    let mut chars = s.chars();
    match (chars.next().and_then(Sign::from_symbol), chars.next()) {
        (Some(sign), None) => Ok(sign),
        _ => Err(format!("expected `+` or `-`, got `{s}`")),
    }
}

// A failure reported with exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome2 = Result<(String, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&str) -> signet::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn limits(g: &Global) -> Limits {
    Limits {
        cycle_cap: g.cycle_cap,
        max_order: g.max_order,
        ..Limits::default()
    }
}

fn header() -> String {
    format!("# schema {REPORT_SCHEMA}\n")
}

fn analyze(g: &Global, path: &Path) -> Outcome2 {
    let report = structure::analyze(&load(path, parse_sdigraph)?, &limits(g))?;
    Ok(match g.format {
        Format::Human => (report.to_human(), true),
        Format::Structured => (report.to_structured(), true),
    })
}

fn fixed_points(g: &Global, path: &Path) -> Outcome2 {
    let f = load(path, parse_boolnet)?;
    let fixed = f.fixed_points()?;
    let mut s = String::new();
    match g.format {
        Format::Human => {
            let _ = writeln!(s, "{} fixed point(s)", fixed.len());
            for x in &fixed {
                let _ = writeln!(s, "  {x}");
            }
        }
        Format::Structured => {
            s.push_str(&header());
            let _ = writeln!(s, "count = {}", fixed.len());
            for x in &fixed {
                let _ = writeln!(s, "fixed_point = {x}");
            }
        }
    }
    Ok((s, true))
}

fn attractors(g: &Global, path: &Path) -> Outcome2 {
    let f = load(path, parse_boolnet)?;
    let all = f.attractors()?;
    let singletons = all.iter().filter(|a| a.len() == 1).count();
    let mut s = String::new();
    let states = |a: &[signet::BitState]| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    match g.format {
        Format::Human => {
            let _ = writeln!(
                s,
                "{} attractor(s): {} fixed point(s), {} cyclic",
                all.len(),
                singletons,
                all.len() - singletons
            );
            for a in &all {
                let _ = writeln!(s, "  {{{}}}", states(a));
            }
        }
        Format::Structured => {
            s.push_str(&header());
            let _ = writeln!(s, "attractors = {}", all.len());
            let _ = writeln!(s, "singleton = {singletons}");
            let _ = writeln!(s, "cyclic = {}", all.len() - singletons);
            for a in &all {
                let _ = writeln!(s, "attractor = {}", states(a));
            }
        }
    }
    Ok((s, true))
}

// Tallies of a check, printed the same way for one instance or a sweep.
struct CheckTally {
    instances: u64,
    applicable: u64,
    violations: u64,
    first: Option<String>,
}

impl CheckTally {
    fn single(outcome: Outcome, instance: impl FnOnce() -> String) -> Self {
        let (applicable, first) = match outcome {
            Outcome::Vacuous => (0, None),
            Outcome::Holds => (1, None),
            Outcome::Violated(d) => (1, Some(format!("{d}\n{}", instance()))),
        };
        CheckTally {
            instances: 1,
            applicable,
            violations: u64::from(first.is_some()),
            first,
        }
    }
}

fn check(g: &Global, id: &str, graph: &Path, network: Option<&Path>) -> Outcome2 {
    let p = property(id)?;
    let cap = g.cycle_cap;
    let no_network = |kind: &str| Failure(format!("{id} is checked on {kind} alone; drop the network"));
    let tally = match p.check {
        Check::Digraph(check) => {
            if network.is_some() {
                return Err(no_network("a digraph"));
            }
            let d: Digraph = load(graph, parse_digraph)?;
            CheckTally::single(check(&d, cap)?, || d.to_string())
        }
        Check::Graph(check) => {
            if network.is_some() {
                return Err(no_network("a graph"));
            }
            let sg = load(graph, parse_sdigraph)?;
            let facts = GraphFacts::with_max_indegree(&sg, cap, g.max_indegree);
            CheckTally::single(check(&facts)?, || sg.to_string())
        }
        Check::Network(check) => {
            let sg = load(graph, parse_sdigraph)?;
            let facts = GraphFacts::with_max_indegree(&sg, cap, g.max_indegree);
            match network {
                Some(path) => {
                    let f: BooleanNetwork = load(path, parse_boolnet)?;
                    if f.interaction_graph() != sg {
                        return Err(Error::GraphMismatch.into());
                    }
                    CheckTally::single(check(&facts, &f)?, || f.to_string())
                }
                None if id == "thm6" => {
                    let Check::Graph(all) = thm6_all_networks().check else {
                        unreachable!("the whole-graph form checks graphs")
                    };
                    let mut t = CheckTally::single(all(&facts)?, String::new);
                    t.instances = signet::boolnet::count_consistent(&sg)?.try_into().unwrap_or(u64::MAX);
                    t
                }
                None => {
                    let sweep = check_networks(check, &facts)?;
                    CheckTally {
                        instances: sweep.networks,
                        applicable: sweep.applicable,
                        violations: sweep.violations,
                        first: sweep.first.map(|(f, d)| format!("{d}\n{f}")),
                    }
                }
            }
        }
    };
    let mut s = String::new();
    match g.format {
        Format::Human => {
            let _ = writeln!(s, "{id}: {}", p.summary);
            let _ = writeln!(
                s,
                "{} instance(s), {} satisfying the hypothesis, {} violation(s)",
                tally.instances, tally.applicable, tally.violations
            );
            if let Some(first) = &tally.first {
                let _ = write!(s, "counterexample: {first}");
            }
        }
        Format::Structured => {
            s.push_str(&header());
            let _ = writeln!(s, "theorem = {id}");
            let _ = writeln!(s, "instances = {}", tally.instances);
            let _ = writeln!(s, "applicable = {}", tally.applicable);
            let _ = writeln!(s, "violations = {}", tally.violations);
        }
    }
    Ok((s, tally.violations == 0))
}

fn bounds(g: &Global, path: &Path) -> Outcome2 {
    let sg: SignedDigraph = load(path, parse_sdigraph)?;
    let cap = g.cycle_cap;
    let tau = structure::tau_tilde_plus(&sg, g.max_order, cap)?;
    let d = structure::g_tilde_plus(&sg, cap)?;
    let n = sg.vertex_count().max(1);
    let code = bounds::code_bound(n, d, bounds::DEFAULT_SEARCH_BUDGET)?;
    let pow = 1u128 << tau.size.min(126);
    let exact = code.exact.map_or_else(|| "unknown".to_string(), |a| a.to_string());
    let mut s = String::new();
    match g.format {
        Format::Human => {
            let _ = writeln!(s, "n = {n}, g~+ = {d}, tau~+ = {}", tau.size);
            let _ = writeln!(s, "Gilbert lower bound      {}", code.gilbert_lower);
            let _ = writeln!(s, "exact A(n, g~+)          {exact}");
            let _ = writeln!(s, "sphere packing bound     {}", code.sphere_packing_upper);
            let _ = writeln!(s, "fixed points <= {}", pow.min(code.upper()));
        }
        Format::Structured => {
            s.push_str(&header());
            let _ = writeln!(s, "n = {n}");
            let _ = writeln!(s, "g_tilde_plus = {d}");
            let _ = writeln!(s, "tau_tilde_plus = {}", tau.size);
            let _ = writeln!(s, "gilbert_lower = {}", code.gilbert_lower);
            let _ = writeln!(s, "exact_a = {exact}");
            let _ = writeln!(s, "sphere_packing_upper = {}", code.sphere_packing_upper);
            let _ = writeln!(s, "fp_upper_bound = {}", pow.min(code.upper()));
        }
    }
    Ok((s, true))
}

fn kernels_cmd(g: &Global, path: &Path) -> Outcome2 {
    let d = load(path, parse_digraph)?;
    let ks = kernels::kernels(&d)?;
    let richardson = kernels::richardson_condition(&d);
    let generalized = kernels::generalized_condition(&d, g.cycle_cap)?;
    let set = |k: &kernels::Kernel| k.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    match g.format {
        Format::Human => {
            let _ = writeln!(s, "{} kernel(s)", ks.len());
            for k in &ks {
                let _ = writeln!(s, "  {{{}}}", set(k));
            }
            let _ = writeln!(s, "no odd cycle: {richardson}");
            let _ = writeln!(s, "odd cycles isolated by arcs: {generalized}");
        }
        Format::Structured => {
            s.push_str(&header());
            let _ = writeln!(s, "count = {}", ks.len());
            for k in &ks {
                let _ = writeln!(s, "kernel = {}", set(k));
            }
            let _ = writeln!(s, "richardson_condition = {richardson}");
            let _ = writeln!(s, "generalized_condition = {generalized}");
        }
    }
    Ok((s, true))
}

fn falsify_cmd(g: &Global, a: &FalsifyArgs) -> Outcome2 {
    if a.theorem == "list" {
        let mut s = String::new();
        for p in REGISTRY {
            let _ = writeln!(s, "{:<15} {}", p.id, p.summary);
        }
        return Ok((s, true));
    }
    let config = FalsifyConfig {
        mode: if a.exhaustive { Mode::Exhaustive } else { Mode::Random },
        trials: a.trials,
        seed: a.seed,
        max_n: a.max_n,
        cycle_cap: g.cycle_cap,
        max_indegree: g.max_indegree,
        keep: a.keep,
    };
    let report = falsify::falsify(&a.theorem, &config).map_err(|e| match e {
        Error::UnknownTheorem(_) => Failure(format!(
            "{e}; known ids: {}",
            REGISTRY.iter().map(|p| p.id).collect::<Vec<_>>().join(", ")
        )),
        e => e.into(),
    })?;
    let ok = report.counterexample_count == 0;
    Ok(match g.format {
        Format::Human => (human_falsify(&report), ok),
        Format::Structured => (report.to_structured(), ok),
    })
}

fn human_falsify(r: &FalsifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: {} instance(s), {} satisfying the hypothesis, {} counterexample(s) in {:.2}s",
        r.theorem, r.trials, r.applicable, r.counterexample_count, r.wall_time_secs
    );
    for c in &r.counterexamples {
        let _ = writeln!(s, "\ninstance {}: {}", c.index, c.detail);
        for text in [&c.graph, &c.network, &c.digraph].into_iter().flatten() {
            s.push_str(text);
        }
    }
    s
}

fn generate_cmd(kind: &GenerateKind, output: Option<&Path>) -> Outcome2 {
    let g = match *kind {
        GenerateKind::Figure1 { n } => generate::figure1(n)?,
        GenerateKind::DoubleCycle {
            len1,
            sign1,
            len2,
            sign2,
        } => generate::double_cycle(len1, sign1, len2, sign2)?,
        GenerateKind::Random {
            n,
            density,
            negative_fraction,
            seed,
        } => {
            let mut params = RandomParams::new(n);
            if let Some(d) = density {
                params.density = d;
            }
            params.negative_fraction = negative_fraction;
            generate::random(&params, seed)?
        }
    };
    let text = g.to_string();
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            Ok((String::new(), true))
        }
        None => Ok((text, true)),
    }
}

fn run(cli: &Cli) -> Outcome2 {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { graph } => analyze(g, graph),
        Command::FixedPoints { network } => fixed_points(g, network),
        Command::Attractors { network } => attractors(g, network),
        Command::Check {
            theorem,
            graph,
            network,
        } => check(g, theorem, graph, network.as_deref()),
        Command::Bounds { graph } => bounds(g, graph),
        Command::Kernels { digraph } => kernels_cmd(g, digraph),
        Command::Falsify(a) => falsify_cmd(g, a),
        Command::Generate { kind, output } => generate_cmd(kind, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
