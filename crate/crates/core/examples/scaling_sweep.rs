//! A small sweep: classic EA re-optimization after one deletion on paths of
//! growing length, with the fitted log-log slope.

use dynvc::families::Family;
use dynvc::harness::{fit_scaling, run_sweep, summarize, write_records, ExperimentConfig, InitialChange, RunPlan, Start};
use dynvc::{Algo, Problem};

fn main() {
    let mut plan = RunPlan::new(Problem::Classic, Algo::Ea);
    plan.start = Start::Greedy;
    plan.change = InitialChange::DeleteSelected;
    let mut cfg = ExperimentConfig::new(Family::Path, plan);
    cfg.sizes = vec![32, 64, 128, 256];
    cfg.reps = 100;
    cfg.seed = 11;

    let records = run_sweep(&cfg, 4).unwrap();
    let summary = summarize(&records);
    for p in &summary {
        println!(
            "m={:4}  mean {:8.1} ± {:6.1}  median {:7.1}  reached {}/{}",
            p.m, p.mean, p.stderr, p.median, p.reached, p.reps
        );
    }
    let points: Vec<(f64, f64)> = summary.iter().map(|p| (p.m as f64, p.mean)).collect();
    println!("log-log slope {:.3}", fit_scaling(&points).unwrap());

    let mut csv = Vec::new();
    write_records(&mut csv, &records[..3]).unwrap();
    print!("\nfirst rows:\n{}", String::from_utf8(csv).unwrap());
}
