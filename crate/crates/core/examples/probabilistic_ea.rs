//! Weighted (1+1) EA on a random graph while edges appear and disappear in
//! the background at the `auto_thm9` rate.

use dynvc::dynamics::RateRule;
use dynvc::families::{Family, InstanceSpec, WeightMode};
use dynvc::harness::{run_once, BudgetRule, RunPlan, SettingKind};
use dynvc::{Algo, Problem};

fn main() {
    let spec = InstanceSpec { family: Family::Gnp, n: Some(20), m: Some(60), w_max: 8, weights: WeightMode::Uniform };
    let mut plan = RunPlan::new(Problem::Weighted, Algo::Ea);
    plan.setting = SettingKind::Probabilistic;
    plan.rate = RateRule::EaWeightedBound;
    plan.budget = BudgetRule::parse("5 * (2*e*opt*m + 10*e^2*m^2)").unwrap();
    plan.trace_stride = 500;

    for run in 0..5 {
        let r = run_once(&spec, &plan, 2024, run).unwrap().record;
        println!(
            "run {run}: p_d={} OPT={:?} reached={} after {} of {} evaluations, {} changes",
            r.param, r.opt, r.target_reached, r.steps_to_target, r.budget, r.changes
        );
        if let Some(last) = r.trace.last() {
            println!("    last trace point: step {} uncovered {} W {}", last.step, last.uncovered, last.total_weight);
        }
    }
}
