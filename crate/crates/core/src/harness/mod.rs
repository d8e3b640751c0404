//! Deterministic experiment runner.
//!
//! A run is a pure function of its configuration, the master seed and its run
//! index: instance generation, the starting solution, dynamic changes and the
//! search itself all draw from the run's own [`RngStream`].

mod budget;
mod run;
mod stats;
mod sweep;

pub use budget::{BudgetRule, BudgetVars};
pub use run::{run_once, RunPlan, RunResult, Search, SettingKind, Start, InitialChange, TracePoint};
pub use stats::{fit_scaling, summarize, PointSummary};
pub use sweep::{run_sweep, write_records, write_traces, ExperimentConfig, RunRecord, CSV_HEADER, TRACE_HEADER};

use crate::classical::EdgeSolution;
use crate::error::Result;
use crate::graph::Graph;
use crate::oracles::{dual_feasible, dual_maximal, is_maximal_matching};
use crate::rng::RngStream;
use crate::weighted::DualSolution;
use crate::Problem;

/// A solution of either problem variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Classic(EdgeSolution),
    Weighted(DualSolution),
}

impl Solution {
    pub fn problem(&self) -> Problem {
        match self {
            Solution::Classic(_) => Problem::Classic,
            Solution::Weighted(_) => Problem::Weighted,
        }
    }
}

/// Classic: maximal matching. Weighted: feasible and maximal dual.
pub fn target_reached(s: &Solution, g: &Graph) -> Result<bool> {
    match s {
        Solution::Classic(s) => is_maximal_matching(s, g),
        Solution::Weighted(s) => Ok(dual_feasible(s, g)? && dual_maximal(s, g)?),
    }
}

/// Greedy maximal matching scanning edges in the given order.
pub fn greedy_matching_in_order(g: &Graph, order: &[usize]) -> EdgeSolution {
    let mut used = vec![false; g.n() + 1];
    let mut s = EdgeSolution::zeros(g.m());
    for &i in order {
        let e = g.edges()[i];
        if !used[e.u] && !used[e.v] {
            used[e.u] = true;
            used[e.v] = true;
            s.set(i, true);
        }
    }
    s
}

/// Greedy maximal dual: each edge in turn is raised to the smaller residual
/// slack of its endpoints.
pub fn greedy_dual_in_order(g: &Graph, order: &[usize]) -> DualSolution {
    let mut slack: Vec<u64> = std::iter::once(0).chain(g.weights().iter().copied()).collect();
    let mut s = DualSolution::zeros(g.m());
    for &i in order {
        let e = g.edges()[i];
        let raise = slack[e.u].min(slack[e.v]);
        slack[e.u] -= raise;
        slack[e.v] -= raise;
        s.set(i, raise);
    }
    s
}

fn shuffled_edges(g: &Graph, rng: &mut RngStream) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    rng.shuffle(&mut order);
    order
}

pub fn greedy_maximal_matching(g: &Graph, rng: &mut RngStream) -> EdgeSolution {
    greedy_matching_in_order(g, &shuffled_edges(g, rng))
}

pub fn greedy_maximal_dual(g: &Graph, rng: &mut RngStream) -> DualSolution {
    greedy_dual_in_order(g, &shuffled_edges(g, rng))
}
