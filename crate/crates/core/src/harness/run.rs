use std::str::FromStr;

use crate::classical::{ClassicSearch, EdgeSolution};
use crate::dynamics::{
    apply_change, parse_script, poll_change, sample_change, Change, ChangePolicy, DynamicSetting, RateRule,
    ScriptedChange,
};
use crate::error::{Error, Result};
use crate::families::{generate, Family, InstanceSpec};
use crate::graph::{EdgeId, Graph};
use crate::oracles::{exact_min_vc, MAX_VC_VERTICES};
use crate::rng::RngStream;
use crate::weighted::{DualSolution, WeightedSearch};
use crate::{Algo, Problem};

use super::budget::{BudgetRule, BudgetVars};
use super::sweep::RunRecord;
use super::{greedy_maximal_dual, greedy_maximal_matching, Solution};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Start {
    /// All bits 0 / all weights 0.
    #[default]
    Zero,
    /// Greedy maximal matching / greedy maximal dual over a shuffled edge order.
    Greedy,
}

impl FromStr for Start {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Start::Zero),
            "greedy" => Ok(Start::Greedy),
            other => Err(Error::Invalid(format!("unknown start `{other}` (expected zero|greedy)"))),
        }
    }
}

/// The single scheduled change of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InitialChange {
    #[default]
    None,
    /// Delete a uniformly chosen selected edge (classic) or positive-weight edge (weighted).
    DeleteSelected,
    /// A change drawn by the configured [`ChangePolicy`].
    Random,
}

impl FromStr for InitialChange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(InitialChange::None),
            "delete_selected" => Ok(InitialChange::DeleteSelected),
            "random" => Ok(InitialChange::Random),
            other => Err(Error::Invalid(format!(
                "unknown change `{other}` (expected none|delete_selected|random)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SettingKind {
    /// Only the scheduled change (and scripted changes) happen.
    #[default]
    OneTime,
    /// Background changes fire before each step with the configured rate.
    Probabilistic,
}

impl SettingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SettingKind::OneTime => "onetime",
            SettingKind::Probabilistic => "prob",
        }
    }
}

impl FromStr for SettingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "onetime" => Ok(SettingKind::OneTime),
            "prob" => Ok(SettingKind::Probabilistic),
            other => Err(Error::Invalid(format!("unknown setting `{other}` (expected onetime|prob)"))),
        }
    }
}

/// How a single run proceeds once its instance exists.
#[derive(Clone, Debug, PartialEq)]
pub struct RunPlan {
    pub problem: Problem,
    pub algo: Algo,
    pub start: Start,
    pub setting: SettingKind,
    pub change: InitialChange,
    /// Step boundary at which `change` fires.
    pub at: u64,
    pub rate: RateRule,
    pub epsilon: f64,
    pub policy: ChangePolicy,
    pub script: Vec<ScriptedChange>,
    pub budget: BudgetRule,
    /// Target check period in evaluations.
    pub stride: u64,
    /// Trace sampling period; 0 disables tracing.
    pub trace_stride: u64,
}

impl RunPlan {
    pub fn new(problem: Problem, algo: Algo) -> Self {
        RunPlan {
            problem,
            algo,
            start: Start::Zero,
            setting: SettingKind::OneTime,
            change: InitialChange::None,
            at: 0,
            rate: RateRule::Fixed(0.0),
            epsilon: 0.1,
            policy: ChangePolicy::Uniform,
            script: Vec::new(),
            budget: BudgetRule::Auto,
            stride: 1,
            trace_stride: 0,
        }
    }

    pub fn with_script_text(mut self, text: &str) -> Result<Self> {
        self.script = parse_script(text)?;
        Ok(self)
    }

    fn needs_opt(&self) -> bool {
        self.budget.needs_opt(self.problem, self.algo)
            || (self.setting == SettingKind::Probabilistic && self.rate.needs_opt())
    }

    /// First step at which reaching the target ends the run.
    fn settle_step(&self) -> u64 {
        let scheduled = (self.change != InitialChange::None).then_some(self.at);
        scheduled.into_iter().chain(self.script.iter().map(|c| c.at)).max().unwrap_or(0)
    }

    pub fn param(&self, p_d: Option<f64>) -> String {
        match (self.setting, p_d) {
            (SettingKind::Probabilistic, Some(p)) => format!("{p}"),
            _ => self.at.to_string(),
        }
    }
}

/// Incremental search state of either variant.
#[derive(Clone, Debug)]
pub enum Search {
    Classic(ClassicSearch),
    Weighted(WeightedSearch),
}

impl Search {
    pub fn new(g: &Graph, s: Solution) -> Result<Self> {
        Ok(match s {
            Solution::Classic(s) => Search::Classic(ClassicSearch::new(g, s)?),
            Solution::Weighted(s) => Search::Weighted(WeightedSearch::new(g, s)?),
        })
    }

    #[inline]
    pub fn step(&mut self, g: &Graph, algo: Algo, rng: &mut RngStream) -> bool {
        match self {
            Search::Classic(s) => s.step(g, algo, rng),
            Search::Weighted(s) => s.step(g, algo, rng),
        }
    }

    #[inline]
    pub fn is_target(&self) -> bool {
        match self {
            Search::Classic(s) => s.is_target(),
            Search::Weighted(s) => s.is_target(),
        }
    }

    pub fn uncovered(&self) -> u64 {
        match self {
            Search::Classic(s) => s.fitness().uncovered,
            Search::Weighted(s) => s.fitness().uncovered,
        }
    }

    /// Dual value: selected edge count (classic) or total edge weight.
    pub fn total_weight(&self) -> u64 {
        match self {
            Search::Classic(s) => s.solution().count_selected() as u64,
            Search::Weighted(s) => s.fitness().total_weight,
        }
    }

    pub fn solution(&self) -> Solution {
        match self {
            Search::Classic(s) => Solution::Classic(s.solution().clone()),
            Search::Weighted(s) => Solution::Weighted(s.solution().clone()),
        }
    }

    pub fn apply(&mut self, g: &mut Graph, c: &Change) -> Result<()> {
        match self {
            Search::Classic(s) => {
                let mut sol: EdgeSolution = s.solution().clone();
                apply_change(g, &mut sol, c)?;
                s.reset(g, sol)
            }
            Search::Weighted(s) => {
                let mut sol: DualSolution = s.solution().clone();
                apply_change(g, &mut sol, c)?;
                s.reset(g, sol)
            }
        }
    }

    /// Deletion of a uniformly chosen edge that carries selection or weight.
    pub fn delete_selected(&self, rng: &mut RngStream) -> Option<Change> {
        let carriers: Vec<usize> = match self {
            Search::Classic(s) => s.solution().selected().collect(),
            Search::Weighted(s) => {
                let w = s.solution();
                (0..w.len()).filter(|&i| w.get(i) > 0).collect()
            }
        };
        (!carriers.is_empty()).then(|| Change::Remove(EdgeId(carriers[rng.index(carriers.len())])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TracePoint {
    pub step: u64,
    pub uncovered: u64,
    pub total_weight: u64,
}

/// Raw outcome of [`execute`].
#[derive(Clone, Debug)]
pub struct Execution {
    pub steps: u64,
    pub reached: bool,
    pub budget: u64,
    pub changes: u64,
    pub trace: Vec<TracePoint>,
    pub graph: Graph,
    pub solution: Solution,
}

/// Runs the search loop: at each step boundary due changes are applied, the
/// target is checked, then one mutant is generated and evaluated.
pub fn execute(
    mut g: Graph,
    start: Solution,
    plan: &RunPlan,
    background: Option<f64>,
    budget: u64,
    rng: &mut RngStream,
) -> Result<Execution> {
    let mut search = Search::new(&g, start)?;
    let settle = plan.settle_step();
    let scheduled = DynamicSetting::OneTime { at_step: plan.at };
    let background = background.map(|p_d| DynamicSetting::Probabilistic { p_d });
    let mut script = plan.script.iter().peekable();
    let mut trace = Vec::new();
    let mut changes = 0;
    let mut evals = 0u64;
    let reached = loop {
        if plan.change != InitialChange::None && poll_change(&scheduled, evals, rng) {
            let change = match plan.change {
                InitialChange::DeleteSelected => search.delete_selected(rng),
                _ => sample_change(&g, rng, plan.policy),
            };
            if let Some(c) = change {
                search.apply(&mut g, &c)?;
                changes += 1;
            }
        }
        while let Some(sc) = script.next_if(|sc| sc.at == evals) {
            let change = sc.resolve(&g)?;
            search.apply(&mut g, &change)?;
            changes += 1;
        }
        if let Some(setting) = &background {
            if poll_change(setting, evals, rng) {
                if let Some(c) = sample_change(&g, rng, plan.policy) {
                    search.apply(&mut g, &c)?;
                    changes += 1;
                }
            }
        }
        if plan.trace_stride > 0 && evals.is_multiple_of(plan.trace_stride) {
            trace.push(TracePoint { step: evals, uncovered: search.uncovered(), total_weight: search.total_weight() });
        }
        let check = evals.is_multiple_of(plan.stride.max(1)) || evals == budget;
        if evals >= settle && check && search.is_target() {
            break true;
        }
        if evals >= budget {
            break false;
        }
        search.step(&g, plan.algo, rng);
        evals += 1;
    };
    if plan.trace_stride > 0 && trace.last().map(|t| t.step) != Some(evals) {
        trace.push(TracePoint { step: evals, uncovered: search.uncovered(), total_weight: search.total_weight() });
    }
    Ok(Execution { steps: evals, reached, budget, changes, trace, solution: search.solution(), graph: g })
}

/// Outcome of a full run including its terminal state for re-certification.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub record: RunRecord,
    pub graph: Graph,
    pub solution: Solution,
}

/// Generates the instance, builds the starting solution and runs the search.
pub fn run_once(instance: &InstanceSpec, plan: &RunPlan, master_seed: u64, run_index: u64) -> Result<RunResult> {
    let mut rng = RngStream::child(master_seed, run_index);
    let mut instance_rng = rng.fork(0x1);
    let mut g = generate(instance, &mut instance_rng)?;
    if plan.problem == Problem::Classic && !g.is_unit_weight() {
        g = Graph::from_edges(g.n(), g.m_max(), &g.edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>())?;
    }
    let opt = if plan.needs_opt() && g.n() <= MAX_VC_VERTICES { Some(exact_min_vc(&g)?.weight) } else { None };
    // beyond the oracle's reach the total vertex weight stands in as an upper bound
    let opt_or_bound = match opt {
        Some(o) => o,
        None => g.total_weight()?,
    };
    let vars = BudgetVars {
        m: g.m(),
        n: g.n(),
        m_max: g.m_max(),
        w_max: g.max_weight(),
        opt: Some(opt_or_bound),
    };
    let budget = plan.budget.evaluate(plan.problem, plan.algo, &vars)?;
    let p_d = match plan.setting {
        SettingKind::Probabilistic => Some(plan.rate.resolve(g.m_max(), g.max_weight(), Some(opt_or_bound), plan.epsilon)?),
        SettingKind::OneTime => None,
    };
    let start = match (plan.problem, plan.start) {
        (Problem::Classic, Start::Zero) => Solution::Classic(EdgeSolution::zeros(g.m())),
        (Problem::Classic, Start::Greedy) => Solution::Classic(greedy_maximal_matching(&g, &mut rng)),
        (Problem::Weighted, Start::Zero) => Solution::Weighted(DualSolution::zeros(g.m())),
        (Problem::Weighted, Start::Greedy) => Solution::Weighted(greedy_maximal_dual(&g, &mut rng)),
    };
    let (n, m) = (g.n(), g.m());
    let w_max = match instance.family {
        Family::File { .. } => g.max_weight(),
        _ if plan.problem == Problem::Classic => 1,
        _ => instance.w_max,
    };
    let exec = execute(g, start, plan, p_d, budget, &mut rng)?;
    let record = RunRecord {
        run_index,
        master_seed,
        family: instance.family.name().to_string(),
        n,
        m,
        w_max,
        algo: plan.algo,
        problem: plan.problem,
        setting: plan.setting,
        param: plan.param(p_d),
        steps_to_target: exec.steps,
        target_reached: exec.reached,
        budget: exec.budget,
        changes: exec.changes,
        opt,
        trace: exec.trace,
        error: None,
    };
    Ok(RunResult { record, graph: exec.graph, solution: exec.solution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::WeightMode;
    use crate::oracles::dual_maximal;

    fn p3() -> Graph {
        let mut g = Graph::with_weights(vec![1, 2, 1], 3).unwrap();
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 3).unwrap();
        g
    }

    #[test]
    fn start_at_target_takes_zero_steps() {
        let g = p3();
        let plan = RunPlan::new(Problem::Weighted, Algo::Rls);
        let start = Solution::Weighted(DualSolution::from_weights(vec![1, 1]));
        let exec = execute(g, start, &plan, None, 100, &mut RngStream::from_seed(1)).unwrap();
        assert!(exec.reached);
        assert_eq!(exec.steps, 0);
    }

    #[test]
    fn weighted_rls_on_p3_reaches_a_maximal_dual() {
        let g = p3();
        let plan = RunPlan::new(Problem::Weighted, Algo::Rls);
        let start = Solution::Weighted(DualSolution::zeros(2));
        let exec = execute(g, start, &plan, Some(0.0), 10_000, &mut RngStream::from_seed(2)).unwrap();
        assert!(exec.reached);
        assert!(exec.steps > 0 && exec.steps <= 10_000);
        let Solution::Weighted(s) = &exec.solution else { panic!() };
        assert!(dual_maximal(s, &exec.graph).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_recorded() {
        let g = Graph::from_edges(40, 80, &(1..40).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        let plan = RunPlan::new(Problem::Classic, Algo::Ea);
        let start = Solution::Classic(EdgeSolution::zeros(g.m()));
        let exec = execute(g, start, &plan, None, 5, &mut RngStream::from_seed(3)).unwrap();
        assert!(!exec.reached);
        assert_eq!(exec.steps, 5);
    }

    #[test]
    fn runs_are_deterministic() {
        let spec = InstanceSpec { family: Family::Gnp, n: Some(12), m: Some(20), w_max: 5, weights: WeightMode::Uniform };
        let mut plan = RunPlan::new(Problem::Weighted, Algo::Ea);
        plan.setting = SettingKind::Probabilistic;
        plan.rate = RateRule::Fixed(0.01);
        plan.trace_stride = 7;
        let a = run_once(&spec, &plan, 42, 5).unwrap();
        let b = run_once(&spec, &plan, 42, 5).unwrap();
        assert_eq!(a.record, b.record);
        assert_eq!(a.solution, b.solution);
        let c = run_once(&spec, &plan, 42, 6).unwrap();
        assert_ne!(a.record.trace, c.record.trace);
    }

    #[test]
    fn scheduled_deletion_hits_a_selected_edge() {
        let spec = InstanceSpec { family: Family::Path, n: None, m: Some(30), w_max: 1, weights: WeightMode::Uniform };
        let mut plan = RunPlan::new(Problem::Classic, Algo::Ea);
        plan.start = Start::Greedy;
        plan.change = InitialChange::DeleteSelected;
        plan.trace_stride = 1;
        let r = run_once(&spec, &plan, 1, 0).unwrap();
        assert_eq!(r.record.changes, 1);
        assert_eq!(r.graph.m(), 29);
        assert!(r.record.target_reached);
        assert_eq!(r.record.trace[0].step, 0);
        assert_eq!(r.record.trace.last().unwrap().uncovered, 0);
    }

    #[test]
    fn scripted_changes_fire_at_their_steps() {
        let g = Graph::from_edges(4, 6, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let plan = RunPlan::new(Problem::Classic, Algo::Rls)
            .with_script_text("at 0 del 2 3\nat 10 add 1 4\n")
            .unwrap();
        let start = Solution::Classic("010".parse().unwrap());
        let exec = execute(g, start, &plan, None, 100_000, &mut RngStream::from_seed(9)).unwrap();
        assert_eq!(exec.changes, 2);
        assert!(exec.steps >= 10);
        assert!(exec.graph.has_edge(1, 4) && !exec.graph.has_edge(2, 3));
        assert!(exec.reached);
    }
}
