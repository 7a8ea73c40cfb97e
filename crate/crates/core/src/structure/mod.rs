//! Structural theory of a signed digraph: special arcs, graph-only
//! conditions on fixed points, and the parameters bounding their number.

mod conditions;
mod params;
mod special;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use conditions::{
    check_thm_newrule1, check_thm_newrule2, check_thm_renewrule1, isolation_condition,
    no_fixed_point_condition, two_fixed_points_condition, unique_cycle_premise,
    unique_negative_cycle_arc, CycleArc, CycleVertex, Verdict,
};
pub use params::{g_plus, g_tilde_plus, tau_plus, tau_tilde_plus, Transversal};
pub use special::{is_special_arc, SpecialArcVerdict, SpecialArcs, SpecialCondition};

pub use crate::sgraph::{two_coloring, TwoColoring};

use crate::bounds::{self, CodeBound};
use crate::error::Result;
use crate::sgraph::{CycleLength, Sign, SignedDigraph, DEFAULT_CYCLE_CAP};

/// Resource limits shared by the exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of cycles enumerated per graph.
    pub cycle_cap: usize,
    /// Maximum vertex count for the subset searches behind `tau`.
    pub max_order: usize,
    /// Node budget of the exact code search; sphere packing is used past it.
    pub code_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cycle_cap: DEFAULT_CYCLE_CAP,
            max_order: 15,
            code_budget: bounds::DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// Version tag of the `key = value` report format.
pub const REPORT_SCHEMA: &str = "signet-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub positive_cycles: usize,
    pub negative_cycles: usize,
    pub tau_plus: Transversal,
    pub tau_tilde_plus: Transversal,
    pub g_plus: CycleLength,
    pub g_tilde_plus: CycleLength,
    pub thm3: Verdict<CycleArc>,
    pub thm4: Verdict<CycleVertex>,
    pub thm5: Verdict<CycleArc>,
    pub nofp_condition: bool,
    pub twofp_condition: bool,
    /// Strong, one positive cycle, some negative cycle: at most one fixed point.
    pub unique_positive_cycle: bool,
    /// Strong, one negative cycle, some positive cycle: at least one fixed point.
    pub unique_negative_cycle: bool,
    pub code_bound: CodeBound,
    pub fp_upper_bound: u128,
}

impl AnalysisReport {
    /// Flat `key = value` lines preceded by a schema comment.
    pub fn to_structured(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# schema {REPORT_SCHEMA}");
        let _ = writeln!(s, "tau_plus = {}", self.tau_plus.size);
        let _ = writeln!(s, "tau_tilde_plus = {}", self.tau_tilde_plus.size);
        let _ = writeln!(s, "g_plus = {}", self.g_plus);
        let _ = writeln!(s, "g_tilde_plus = {}", self.g_tilde_plus);
        let _ = writeln!(s, "thm3 = {}", self.thm3.holds);
        let _ = writeln!(s, "thm4 = {}", self.thm4.holds);
        let _ = writeln!(s, "thm5 = {}", self.thm5.holds);
        let _ = writeln!(s, "nofp_condition = {}", self.nofp_condition);
        let _ = writeln!(s, "twofp_condition = {}", self.twofp_condition);
        let _ = writeln!(s, "fp_upper_bound = {}", self.fp_upper_bound);
        s
    }

    /// Readable summary; the layout is not stable.
    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let set = |t: &Transversal| {
            let v: Vec<String> = t.vertices.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", v.join(", "))
        };
        let _ = writeln!(
            s,
            "{} vertices, {} positive and {} negative cycles",
            self.order, self.positive_cycles, self.negative_cycles
        );
        let _ = writeln!(s, "tau+  = {} via {}", self.tau_plus.size, set(&self.tau_plus));
        let _ = writeln!(
            s,
            "tau~+ = {} via {}",
            self.tau_tilde_plus.size,
            set(&self.tau_tilde_plus)
        );
        let _ = writeln!(s, "g+    = {}", self.g_plus);
        let _ = writeln!(s, "g~+   = {}", self.g_tilde_plus);
        let verdict = |name: &str, holds: bool, violation: &Option<crate::SignedCycle>| match violation {
            Some(c) if !holds => format!("{name}: fails on {c}"),
            _ => format!("{name}: holds"),
        };
        let _ = writeln!(s, "{}", verdict("uniqueness by arcs", self.thm3.holds, &self.thm3.violation));
        for w in &self.thm3.witnesses {
            let _ = writeln!(s, "  {} isolated by {}", w.cycle, w.arc);
        }
        let _ = writeln!(s, "{}", verdict("uniqueness by vertices", self.thm4.holds, &self.thm4.violation));
        for w in &self.thm4.witnesses {
            let _ = writeln!(s, "  {} isolated at {}", w.cycle, w.vertex);
        }
        let _ = writeln!(s, "{}", verdict("existence by arcs", self.thm5.holds, &self.thm5.violation));
        for w in &self.thm5.witnesses {
            let _ = writeln!(s, "  {} isolated by {}", w.cycle, w.arc);
        }
        let _ = writeln!(s, "no fixed point forced: {}", self.nofp_condition);
        let _ = writeln!(s, "two fixed points forced: {}", self.twofp_condition);
        let _ = writeln!(
            s,
            "fixed points <= {} (A({}, {}) <= {}{})",
            self.fp_upper_bound,
            self.code_bound.n,
            self.code_bound.d,
            self.code_bound.upper(),
            if self.code_bound.exact.is_some() { ", exact" } else { ", sphere packing" }
        );
        s
    }
}

/// Computes every parameter and condition of `g`.
pub fn analyze(g: &SignedDigraph, limits: &Limits) -> Result<AnalysisReport> {
    let cap = limits.cycle_cap;
    let cycles = g.enumerate_cycles(cap)?;
    let positive_cycles = cycles.iter().filter(|c| c.is_positive()).count();
    let tau = tau_plus(g, limits.max_order, cap)?;
    let tau_tilde = params::tau_tilde_plus_below(g, &tau, cap)?;
    let oracle = SpecialArcs::new(g, cap)?;
    let g_tilde = params::g_tilde_from(&oracle);
    let n = g.vertex_count().max(1);
    let code = bounds::code_bound(n, g_tilde, limits.code_budget)?;
    let pow = 1u128 << tau_tilde.size.min(126);
    Ok(AnalysisReport {
        order: g.order(),
        positive_cycles,
        negative_cycles: cycles.len() - positive_cycles,
        g_plus: g_plus(g, cap)?,
        g_tilde_plus: g_tilde,
        thm3: check_thm_newrule1(g, cap)?,
        thm4: check_thm_renewrule1(g, cap)?,
        thm5: check_thm_newrule2(g, cap)?,
        nofp_condition: no_fixed_point_condition(g, cap)?,
        twofp_condition: two_fixed_points_condition(g),
        unique_positive_cycle: unique_cycle_premise(g, Sign::Positive, cap)?,
        unique_negative_cycle: unique_cycle_premise(g, Sign::Negative, cap)?,
        fp_upper_bound: pow.min(code.upper()),
        code_bound: code,
        tau_plus: tau,
        tau_tilde_plus: tau_tilde,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::figure1;
    use crate::testutil::graph;

    #[test]
    fn figure1_nine_has_bound_one() {
        let r = analyze(&figure1(9).unwrap(), &Limits::default()).unwrap();
        assert_eq!(r.fp_upper_bound, 1);
        assert_eq!(r.tau_plus.size, 2);
        assert!(r.thm3.holds && r.thm4.holds);
    }

    #[test]
    fn positive_two_cycle_report() {
        let r = analyze(&graph(2, "1 2 +, 2 1 +"), &Limits::default()).unwrap();
        assert_eq!(
            r.to_structured(),
            "# schema signet-report/1\ntau_plus = 1\ntau_tilde_plus = 1\ng_plus = 2\n\
             g_tilde_plus = 2\nthm3 = false\nthm4 = false\nthm5 = true\nnofp_condition = false\n\
             twofp_condition = true\nfp_upper_bound = 2\n"
        );
    }

    #[test]
    fn single_vertex_without_arcs() {
        let r = analyze(&SignedDigraph::empty(1), &Limits::default()).unwrap();
        assert_eq!(r.fp_upper_bound, 1);
        assert_eq!(r.g_plus, CycleLength::Infinite);
    }

    #[test]
    fn json_dump_round_trips() {
        let r = analyze(&figure1(5).unwrap(), &Limits::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"g_tilde_plus\":\"inf\""));
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
