use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dynvc::config::{parse_config_in, parse_policy, CONFIG_KEYS};
use dynvc::dynamics::{parse_script, ChangePolicy, RateRule};
use dynvc::families::{generate, Family, InstanceSpec, WeightMode};
use dynvc::harness::{
    run_once, run_sweep, write_records, write_traces, BudgetRule, InitialChange, RunPlan, SettingKind, Start,
};
use dynvc::solution_io::{format_solution, parse_solution, verify};
use dynvc::{Algo, Graph, Problem, RngStream};

const EXIT_USAGE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn config_help() -> String {
    let mut s = String::from("Config keys for `sweep --config` (key = value, # comments):\n");
    for (key, default, about) in CONFIG_KEYS {
        s.push_str(&format!("  {key:<13} default {default:<10}  {about}\n"));
    }
    s.push_str("\nExit codes: 0 success, 1 usage/parse error, 2 budget exhausted (run), 3 verification failure.");
    s
}

#[derive(Parser)]
#[command(name = "dynvc", version, about = "Evolutionary vertex cover on dynamic graphs", after_help = config_help())]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Run one search on a graph file and write a one-row CSV.
    Run(Box<RunArgs>),
    /// Run a configured sweep and write the CSV table.
    Sweep(SweepArgs),
    /// Check a solution against the oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// path | cycle | star | bipartite | gnp | file
    #[arg(long)]
    family: String,
    #[arg(long, required_unless_present = "from")]
    n: Option<usize>,
    /// Edge count (path/cycle/star size the graph by it; gnp draws exactly m edges).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    wmax: u64,
    /// uniform (1..=wmax) | constant
    #[arg(long, default_value = "uniform")]
    weights: String,
    #[arg(long)]
    seed: u64,
    /// Source graph for `--family file`.
    #[arg(long)]
    from: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    graph: PathBuf,
    /// classic | weighted
    #[arg(long)]
    problem: String,
    /// ea | rls
    #[arg(long)]
    algo: String,
    /// onetime | prob
    #[arg(long)]
    setting: String,
    /// Change probability: a float or auto_thm2 | auto_thm7 | auto_thm9.
    #[arg(long, default_value = "0")]
    pd: String,
    /// Scripted changes, one `at <t> add|del <u> <v>` per line.
    #[arg(long)]
    changes: Option<PathBuf>,
    /// `auto` or an expression over m n mmax wmax opt e.
    #[arg(long)]
    budget: String,
    #[arg(long)]
    seed: u64,
    /// Write sampled (step, uncovered, total_weight) rows here.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// zero | greedy [default: greedy for onetime, zero for prob]
    #[arg(long)]
    start: Option<String>,
    /// none | delete_selected | random [default: delete_selected for onetime, none for prob]
    #[arg(long)]
    change: Option<String>,
    /// Evaluation count at which the scheduled change fires.
    #[arg(long, default_value_t = 0)]
    at: u64,
    /// uniform | add_only | delete_only
    #[arg(long, default_value = "uniform")]
    policy: String,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    stride: u64,
    /// Trace sampling period [default: 1 when --trace is given].
    #[arg(long)]
    trace_stride: Option<u64>,
    /// Write the final solution here.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Write the graph after all changes here (the final solution refers to it).
    #[arg(long)]
    final_graph: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads [default: available cores].
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

type CliResult = Result<ExitCode, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, data: &[u8]) -> Result<(), String> {
    fs::write(path, data).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    Graph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn gen(a: GenArgs) -> CliResult {
    let family = match a.family.as_str() {
        "file" => {
            let from = a.from.ok_or("--family file needs --from")?;
            let graph = load_graph(&from)?;
            Family::File { path: from.display().to_string(), graph: Box::new(graph) }
        }
        name => name.parse::<Family>().map_err(|e| e.to_string())?,
    };
    let weights: WeightMode = a.weights.parse().map_err(|e: dynvc::Error| e.to_string())?;
    let spec = InstanceSpec { family, n: a.n, m: a.m, w_max: a.wmax, weights };
    // same stream a sweep uses for run 0, so `gen` reproduces its instance
    let mut rng = RngStream::child(a.seed, 0).fork(0x1);
    let g = generate(&spec, &mut rng).map_err(|e| e.to_string())?;
    write(&a.out, g.to_text().as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn run(a: RunArgs) -> CliResult {
    let graph = load_graph(&a.graph)?;
    let err = |e: dynvc::Error| e.to_string();
    let problem: Problem = a.problem.parse().map_err(err)?;
    let algo: Algo = a.algo.parse().map_err(err)?;
    let setting: SettingKind = a.setting.parse().map_err(err)?;
    let mut plan = RunPlan::new(problem, algo);
    plan.setting = setting;
    let onetime = setting == SettingKind::OneTime;
    plan.start = match &a.start {
        Some(s) => s.parse().map_err(err)?,
        None if onetime => Start::Greedy,
        None => Start::Zero,
    };
    plan.change = match &a.change {
        Some(s) => s.parse().map_err(err)?,
        None if onetime => InitialChange::DeleteSelected,
        None => InitialChange::None,
    };
    plan.at = a.at;
    plan.rate = a.pd.parse::<RateRule>().map_err(err)?;
    if let RateRule::Fixed(p) = plan.rate {
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("--pd {p} outside [0, 1]"));
        }
    }
    plan.epsilon = a.epsilon;
    plan.policy = parse_policy(&a.policy).map_err(err)?;
    if let Some(path) = &a.changes {
        plan.script = parse_script(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    plan.budget = BudgetRule::parse(&a.budget).map_err(err)?;
    if a.stride == 0 {
        return Err("--stride must be at least 1".into());
    }
    plan.stride = a.stride;
    plan.trace_stride = match (a.trace_stride, &a.trace) {
        (Some(t), _) => t,
        (None, Some(_)) => 1,
        (None, None) => 0,
    };
    if plan.policy != ChangePolicy::Uniform && setting == SettingKind::OneTime && plan.change != InitialChange::Random {
        eprintln!("note: --policy only affects random changes");
    }

    let spec = InstanceSpec {
        family: Family::File { path: a.graph.display().to_string(), graph: Box::new(graph) },
        n: None,
        m: None,
        w_max: 1,
        weights: WeightMode::Uniform,
    };
    let result = run_once(&spec, &plan, a.seed, 0).map_err(err)?;
    let records = [result.record];
    let mut csv = Vec::new();
    write_records(&mut csv, &records).map_err(err)?;
    write(&a.out, &csv)?;
    if let Some(path) = &a.trace {
        let mut buf = Vec::new();
        write_traces(&mut buf, &records).map_err(err)?;
        write(path, &buf)?;
    }
    if let Some(path) = &a.solution {
        write(path, format!("{}\n", format_solution(&result.solution)).as_bytes())?;
    }
    if let Some(path) = &a.final_graph {
        write(path, result.graph.to_text().as_bytes())?;
    }
    let r = &records[0];
    eprintln!(
        "{} after {} evaluations (budget {}, {} changes)",
        if r.target_reached { "target reached" } else { "budget exhausted" },
        r.steps_to_target,
        r.budget,
        r.changes
    );
    Ok(if r.target_reached { ExitCode::SUCCESS } else { ExitCode::from(EXIT_BUDGET) })
}

fn sweep(a: SweepArgs) -> CliResult {
    let text = read(&a.config)?;
    let base = a.config.parent().unwrap_or(Path::new("."));
    let cfg = parse_config_in(&text, base).map_err(|e| format!("{}: {e}", a.config.display()))?;
    let jobs = a.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1);
    let records = run_sweep(&cfg, jobs).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    write_records(&mut csv, &records).map_err(|e| e.to_string())?;
    write(&a.out, &csv)?;
    if let Some(path) = &a.trace {
        let mut buf = Vec::new();
        write_traces(&mut buf, &records).map_err(|e| e.to_string())?;
        write(path, &buf)?;
    }
    for r in records.iter().filter(|r| r.error.is_some()) {
        eprintln!("run {}: {}", r.run_index, r.error.as_deref().unwrap_or_default());
    }
    let reached = records.iter().filter(|r| r.target_reached).count();
    eprintln!("{} runs, {reached} reached the target", records.len());
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(a: VerifyArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let text = read(&a.solution)?;
    let s = parse_solution(&text).map_err(|e| format!("{}: {e}", a.solution.display()))?;
    let report = verify(&g, &s).map_err(|e| e.to_string())?;
    println!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Run(a) => run(*a),
        Cmd::Sweep(a) => sweep(a),
        Cmd::Verify(a) => verify_cmd(a),
    };
    result.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_USAGE)
    })
}
