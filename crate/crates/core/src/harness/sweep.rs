use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{Family, InstanceSpec, WeightMode};
use crate::{Algo, Problem};

use super::run::{run_once, RunPlan, SettingKind, TracePoint};

pub const CSV_HEADER: &str =
    "run_index,seed,family,n,m,w_max,algo,problem,setting,param,steps_to_target,target_reached,budget";
pub const TRACE_HEADER: &str = "run_index,step,uncovered,total_weight";

/// One repetition of an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub run_index: u64,
    pub master_seed: u64,
    pub family: String,
    pub n: usize,
    /// Edge count of the generated instance, before any change.
    pub m: usize,
    pub w_max: u64,
    pub algo: Algo,
    pub problem: Problem,
    pub setting: SettingKind,
    /// Scheduled change step (one-time) or change probability (probabilistic).
    pub param: String,
    /// Fitness evaluations performed; equals `budget` when the target was missed.
    pub steps_to_target: u64,
    pub target_reached: bool,
    pub budget: u64,
    pub changes: u64,
    /// Exact optimum, when the run needed and could afford it.
    pub opt: Option<u64>,
    pub trace: Vec<TracePoint>,
    pub error: Option<String>,
}

impl RunRecord {
    fn csv_row(&self) -> [String; 13] {
        [
            self.run_index.to_string(),
            self.master_seed.to_string(),
            self.family.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.w_max.to_string(),
            self.algo.as_str().to_string(),
            self.problem.as_str().to_string(),
            self.setting.as_str().to_string(),
            self.param.clone(),
            self.steps_to_target.to_string(),
            self.target_reached.to_string(),
            self.budget.to_string(),
        ]
    }
}

/// A sweep: every combination of `sizes` and `w_max` values, `reps` runs each.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    /// Vertex count for families that need one (gnp, bipartite).
    pub n: Option<usize>,
    /// Edge counts to sweep; empty means a single point sized by `n`.
    pub sizes: Vec<usize>,
    pub w_max: Vec<u64>,
    pub weights: WeightMode,
    pub plan: RunPlan,
    pub reps: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(family: Family, plan: RunPlan) -> Self {
        ExperimentConfig {
            family,
            n: None,
            sizes: Vec::new(),
            w_max: vec![1],
            weights: WeightMode::Uniform,
            plan,
            reps: 1,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Invalid("reps must be at least 1".into()));
        }
        if self.w_max.is_empty() || self.w_max.contains(&0) {
            return Err(Error::Invalid("wmax values must be at least 1".into()));
        }
        if self.plan.stride == 0 {
            return Err(Error::Invalid("stride must be at least 1".into()));
        }
        if self.sizes.is_empty() && self.n.is_none() && !matches!(self.family, Family::File { .. }) {
            return Err(Error::Invalid("either sizes or n must be given".into()));
        }
        if let crate::dynamics::RateRule::Fixed(p) = self.plan.rate {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Invalid(format!("pd {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// Sweep points in run-index order.
    pub fn points(&self) -> Vec<InstanceSpec> {
        let sizes: Vec<Option<usize>> =
            if self.sizes.is_empty() { vec![None] } else { self.sizes.iter().map(|&m| Some(m)).collect() };
        sizes
            .iter()
            .flat_map(|&m| {
                self.w_max.iter().map(move |&w_max| InstanceSpec {
                    family: self.family.clone(),
                    n: self.n,
                    m,
                    w_max,
                    weights: self.weights,
                })
            })
            .collect()
    }

    pub fn total_runs(&self) -> usize {
        self.points().len() * self.reps
    }
}

/// Runs every repetition of every sweep point, `jobs` at a time, and returns
/// the records ordered by run index. A failing run is recorded with its error.
pub fn run_sweep(cfg: &ExperimentConfig, jobs: usize) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let points = cfg.points();
    let reps = cfg.reps;
    let job = |idx: usize| {
        let spec = &points[idx / reps];
        run_once(spec, &cfg.plan, cfg.seed, idx as u64).map(|r| r.record).unwrap_or_else(|e| RunRecord {
            run_index: idx as u64,
            master_seed: cfg.seed,
            family: spec.family.name().to_string(),
            n: spec.n.unwrap_or(0),
            m: spec.m.unwrap_or(0),
            w_max: spec.w_max,
            algo: cfg.plan.algo,
            problem: cfg.plan.problem,
            setting: cfg.plan.setting,
            param: cfg.plan.param(None),
            steps_to_target: 0,
            target_reached: false,
            budget: 0,
            changes: 0,
            opt: None,
            trace: Vec::new(),
            error: Some(e.to_string()),
        })
    };
    let total = points.len() * reps;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..total).into_par_iter().map(job).collect()))
}

pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_traces<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(TRACE_HEADER.split(','))?;
    for r in records {
        for t in &r.trace {
            w.write_record([
                r.run_index.to_string(),
                t.step.to_string(),
                t.uncovered.to_string(),
                t.total_weight.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ExperimentConfig {
        let mut plan = RunPlan::new(Problem::Classic, Algo::Ea);
        plan.trace_stride = 10;
        let mut cfg = ExperimentConfig::new(Family::Path, plan);
        cfg.sizes = vec![8, 16];
        cfg.reps = 3;
        cfg.seed = 77;
        cfg
    }

    #[test]
    fn sweep_shape_and_order() {
        let records = run_sweep(&config(), 4).unwrap();
        assert_eq!(records.len(), 6);
        for (i, r) in records.iter().enumerate() {
            assert_eq!(r.run_index, i as u64);
            assert_eq!(r.m, if i < 3 { 8 } else { 16 });
            assert!(r.steps_to_target <= r.budget);
            assert!(r.error.is_none());
        }
    }

    #[test]
    fn sweeps_are_reproducible_across_thread_counts() {
        let a = run_sweep(&config(), 1).unwrap();
        let b = run_sweep(&config(), 3).unwrap();
        assert_eq!(a, b);
        let mut ca = Vec::new();
        let mut cb = Vec::new();
        write_records(&mut ca, &a).unwrap();
        write_records(&mut cb, &b).unwrap();
        assert_eq!(ca, cb);
        let text = String::from_utf8(ca).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn zero_reps_is_rejected() {
        let mut cfg = config();
        cfg.reps = 0;
        assert!(run_sweep(&cfg, 1).is_err());
    }

    #[test]
    fn trace_csv() {
        let records = run_sweep(&config(), 2).unwrap();
        let mut buf = Vec::new();
        write_traces(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), TRACE_HEADER);
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 4));
    }
}
