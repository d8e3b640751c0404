//! Line-oriented `key = value` experiment configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! family   = path          # path|cycle|star|bipartite|gnp|file
//! sizes    = 64, 128, 256  # edge counts to sweep
//! problem  = classic
//! algo     = ea
//! setting  = prob
//! pd       = auto_thm2
//! reps     = 100
//! ```
//!
//! Relative file paths (`graph`, `changes`) resolve against the base
//! directory given to [`parse_config_in`].

use std::path::Path;
use std::str::FromStr;

use crate::dynamics::{parse_script, ChangePolicy, RateRule};
use crate::error::{Error, Result};
use crate::families::{Family, WeightMode};
use crate::graph::Graph;
use crate::harness::{BudgetRule, ExperimentConfig, RunPlan, SettingKind, Start};
use crate::{Algo, Problem};

/// Every recognised key with its default, as shown by `--help`.
pub const CONFIG_KEYS: &[(&str, &str, &str)] = &[
    ("family", "path", "path|cycle|star|bipartite|gnp|file"),
    ("graph", "-", "graph file, required when family = file"),
    ("n", "-", "vertex count (gnp, bipartite; sizes the other families when sizes is empty)"),
    ("sizes", "-", "comma-separated edge counts to sweep"),
    ("wmax", "1", "comma-separated maximum vertex weights to sweep"),
    ("weights", "uniform", "uniform (1..=wmax) | constant (all wmax)"),
    ("problem", "classic", "classic|weighted"),
    ("algo", "ea", "ea|rls"),
    ("setting", "onetime", "onetime|prob"),
    ("start", "greedy for onetime, zero for prob", "zero|greedy"),
    ("change", "delete_selected for onetime, none for prob", "none|delete_selected|random"),
    ("at", "0", "evaluation count at which the scheduled change fires"),
    ("pd", "0", "change probability per step: float|auto_thm2|auto_thm7|auto_thm9"),
    ("epsilon", "0.1", "slack used by auto_thm9"),
    ("policy", "uniform", "uniform|add_only|delete_only"),
    ("changes", "-", "scripted change file (lines `at <t> add|del <u> <v>`)"),
    ("budget", "auto", "auto or an expression over m n mmax wmax opt e"),
    ("stride", "1", "target check period in evaluations"),
    ("trace_stride", "0", "trace sampling period (0 = off)"),
    ("reps", "1", "repetitions per sweep point (>= 1)"),
    ("seed", "0", "master seed"),
];

pub fn parse_policy(s: &str) -> Result<ChangePolicy> {
    match s {
        "uniform" => Ok(ChangePolicy::Uniform),
        "add_only" => Ok(ChangePolicy::AddOnly),
        "delete_only" => Ok(ChangePolicy::DeleteOnly),
        other => Err(Error::Invalid(format!("unknown policy `{other}` (expected uniform|add_only|delete_only)"))),
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    parse_config_in(text, Path::new("."))
}

pub fn parse_config_in(text: &str, base: &Path) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::new(Family::Path, RunPlan::new(Problem::Classic, Algo::Ea));
    let mut family: Option<(usize, String)> = None;
    let mut graph_path: Option<(usize, String)> = None;
    let mut start = None;
    let mut change = None;
    let mut seen: Vec<&str> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::parse(line_no, format!("expected `key = value`, got `{line}`")))?;
        let known = CONFIG_KEYS
            .iter()
            .map(|k| k.0)
            .find(|&k| k == key)
            .ok_or_else(|| Error::parse(line_no, format!("unknown key `{key}`")))?;
        if seen.contains(&known) {
            return Err(Error::parse(line_no, format!("duplicate key `{key}`")));
        }
        seen.push(known);
        if value.is_empty() {
            return Err(Error::parse(line_no, format!("missing value for `{key}`")));
        }
        let at_line = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(line_no, other.to_string()),
        };
        let plan = &mut cfg.plan;
        match key {
            "family" => family = Some((line_no, value.to_string())),
            "graph" => graph_path = Some((line_no, value.to_string())),
            "n" => cfg.n = Some(number(value, line_no)?),
            "sizes" => cfg.sizes = list(value, line_no)?,
            "wmax" => cfg.w_max = list(value, line_no)?,
            "weights" => cfg.weights = WeightMode::from_str(value).map_err(at_line)?,
            "problem" => plan.problem = value.parse().map_err(at_line)?,
            "algo" => plan.algo = value.parse().map_err(at_line)?,
            "setting" => plan.setting = value.parse().map_err(at_line)?,
            "start" => start = Some(value.parse::<Start>().map_err(at_line)?),
            "change" => change = Some(value.parse().map_err(at_line)?),
            "at" => plan.at = number(value, line_no)?,
            "pd" => {
                let rate: RateRule = value.parse().map_err(at_line)?;
                if let RateRule::Fixed(p) = rate {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(Error::parse(line_no, format!("pd {p} outside [0, 1]")));
                    }
                }
                plan.rate = rate;
            }
            "epsilon" => {
                let eps: f64 = number(value, line_no)?;
                if !(eps > 0.0 && eps.is_finite()) {
                    return Err(Error::parse(line_no, "epsilon must be positive"));
                }
                plan.epsilon = eps;
            }
            "policy" => plan.policy = parse_policy(value).map_err(at_line)?,
            "changes" => {
                let text = std::fs::read_to_string(base.join(value)).map_err(|e| at_line(e.into()))?;
                plan.script = parse_script(&text).map_err(at_line)?;
            }
            "budget" => plan.budget = BudgetRule::parse(value).map_err(at_line)?,
            "stride" => {
                plan.stride = number(value, line_no)?;
                if plan.stride == 0 {
                    return Err(Error::parse(line_no, "stride must be at least 1"));
                }
            }
            "trace_stride" => plan.trace_stride = number(value, line_no)?,
            "reps" => {
                cfg.reps = number(value, line_no)?;
                if cfg.reps == 0 {
                    return Err(Error::parse(line_no, "reps must be at least 1"));
                }
            }
            "seed" => cfg.seed = number(value, line_no)?,
            _ => unreachable!("key list and match arms disagree"),
        }
    }

    let onetime = cfg.plan.setting == SettingKind::OneTime;
    cfg.plan.start = start.unwrap_or(if onetime { Start::Greedy } else { Start::Zero });
    cfg.plan.change = change.unwrap_or(if onetime {
        crate::harness::InitialChange::DeleteSelected
    } else {
        crate::harness::InitialChange::None
    });

    cfg.family = match family {
        Some((line_no, name)) if name == "file" => {
            let (_, path) = graph_path.ok_or_else(|| Error::parse(line_no, "family = file needs a `graph` key"))?;
            let text = std::fs::read_to_string(base.join(&path))?;
            let graph = Graph::parse(&text)?;
            Family::File { path, graph: Box::new(graph) }
        }
        Some((line_no, name)) => {
            if let Some((gl, _)) = graph_path {
                return Err(Error::parse(gl, "`graph` only applies to family = file"));
            }
            Family::from_str(&name).map_err(|e| Error::parse(line_no, e.to_string()))?
        }
        None => Family::Path,
    };
    if cfg.w_max.contains(&0) {
        return Err(Error::Invalid("wmax values must be at least 1".into()));
    }
    cfg.validate()?;
    Ok(cfg)
}

fn number<T: FromStr>(value: &str, line_no: usize) -> Result<T> {
    value.parse().map_err(|_| Error::parse(line_no, format!("invalid number `{value}`")))
}

fn list<T: FromStr>(value: &str, line_no: usize) -> Result<Vec<T>> {
    value.split(',').map(|v| number(v.trim(), line_no)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reps_and_defaults() {
        let cfg = parse_config("sizes = 8, 16\nreps = 100\n").unwrap();
        assert_eq!(cfg.reps, 100);
        assert_eq!(cfg.sizes, vec![8, 16]);
        assert_eq!(cfg.plan.start, Start::Greedy);
        assert_eq!(cfg.plan.rate, RateRule::Fixed(0.0));
    }

    #[test]
    fn auto_rate_resolves_per_instance() {
        let cfg = parse_config("sizes = 10\nsetting = prob\npd = auto_thm2").unwrap();
        assert_eq!(cfg.plan.rate, RateRule::ClassicBound);
        let p = cfg.plan.rate.resolve(100, 1, None, 0.1).unwrap();
        assert!((p - 1.0 / (2000.0 * std::f64::consts::E * 100.0)).abs() < 1e-18);
        assert_eq!(cfg.plan.start, Start::Zero);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_config("reps = 3\n\nreps = 0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_config("sizes = 4\ncolour = blue") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("colour"));
            }
            other => panic!("{other:?}"),
        }
        match parse_config("sizes = 4\nalgo = sa") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_config("sizes = 4\npd = 1.5").is_err());
        assert!(parse_config("sizes = 4\nsizes = 5").is_err());
        assert!(parse_config("sizes = x").is_err());
    }

    #[test]
    fn file_family_loads_graph() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("g.txt"), "graph 3 3\ne 1 2\ne 2 3\n").unwrap();
        let cfg = parse_config_in("family = file\ngraph = g.txt\nproblem = weighted", dir.path()).unwrap();
        match &cfg.family {
            Family::File { graph, .. } => assert_eq!(graph.m(), 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_config("family = file").is_err());
    }
}
