//! Edge insertions and deletions applied to a graph together with a solution.
//!
//! A new edge enters the solution unselected (bit 0, weight 0); a deleted
//! edge leaves the solution and the vector is compacted with the same
//! swap-remove the graph performs. Changes happen at step boundaries and do
//! not cost a fitness evaluation.

use std::f64::consts::E;

use crate::classical::EdgeSolution;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph};
use crate::rng::RngStream;
use crate::weighted::DualSolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Change {
    Add(usize, usize),
    Remove(EdgeId),
}

/// When changes fire.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DynamicSetting {
    /// A single change at the given step boundary.
    OneTime { at_step: u64 },
    /// An independent change with probability `p_d` before every step.
    Probabilistic { p_d: f64 },
}

impl DynamicSetting {
    pub fn probabilistic(p_d: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_d) {
            return Err(Error::Invalid(format!("change probability {p_d} outside [0, 1]")));
        }
        Ok(DynamicSetting::Probabilistic { p_d })
    }
}

/// How [`sample_change`] picks a change.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChangePolicy {
    /// Insert or delete with probability 1/2 each when both are possible.
    #[default]
    Uniform,
    AddOnly,
    DeleteOnly,
}

/// Per-edge solution vectors that follow the graph's edge vector.
pub trait EdgeVector {
    fn entries(&self) -> usize;
    /// Appends the value a fresh edge starts with.
    fn push_neutral(&mut self);
    fn swap_remove_entry(&mut self, i: usize);
    fn is_neutral(&self, i: usize) -> bool;
}

impl EdgeVector for EdgeSolution {
    fn entries(&self) -> usize {
        self.len()
    }

    fn push_neutral(&mut self) {
        self.push(false);
    }

    fn swap_remove_entry(&mut self, i: usize) {
        self.swap_remove(i);
    }

    fn is_neutral(&self, i: usize) -> bool {
        !self.get(i)
    }
}

impl EdgeVector for DualSolution {
    fn entries(&self) -> usize {
        self.len()
    }

    fn push_neutral(&mut self) {
        self.push(0);
    }

    fn swap_remove_entry(&mut self, i: usize) {
        self.swap_remove(i);
    }

    fn is_neutral(&self, i: usize) -> bool {
        self.get(i) == 0
    }
}

/// What [`apply_change`] did to the edge vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Applied {
    Added { id: EdgeId, edge: Edge },
    Removed { edge: Edge, moved: Option<(EdgeId, EdgeId)> },
}

pub fn apply_change<S: EdgeVector>(g: &mut Graph, s: &mut S, c: &Change) -> Result<Applied> {
    if s.entries() != g.m() {
        return Err(Error::LengthMismatch { len: s.entries(), m: g.m() });
    }
    let invalid = |e: Error| Error::InvalidChange(e.to_string());
    match *c {
        Change::Add(a, b) => {
            let id = g.add_edge(a, b).map_err(invalid)?;
            s.push_neutral();
            Ok(Applied::Added { id, edge: g.edge(id) })
        }
        Change::Remove(id) => {
            let r = g.remove_edge(id).map_err(invalid)?;
            s.swap_remove_entry(id.0);
            Ok(Applied::Removed { edge: r.removed, moved: r.moved })
        }
    }
}

fn sample_non_edge(g: &Graph, rng: &mut RngStream) -> Option<(usize, usize)> {
    let n = g.n();
    if g.m() >= g.pair_count() {
        return None;
    }
    for _ in 0..64 {
        let a = rng.index(n) + 1;
        let mut b = rng.index(n - 1) + 1;
        if b >= a {
            b += 1;
        }
        if !g.has_edge(a, b) {
            return Some((a.min(b), a.max(b)));
        }
    }
    // dense graph: enumerate the complement instead
    let free: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    Some(free[rng.index(free.len())])
}

/// Draws a random valid change, or `None` when no change of the allowed kinds exists.
pub fn sample_change(g: &Graph, rng: &mut RngStream, policy: ChangePolicy) -> Option<Change> {
    let can_add = g.m() < g.m_max() && g.m() < g.pair_count();
    let can_del = g.m() > 0;
    let add = match (policy, can_add, can_del) {
        (ChangePolicy::AddOnly, true, _) => true,
        (ChangePolicy::DeleteOnly, _, true) => false,
        (ChangePolicy::Uniform, true, true) => rng.coin(),
        (ChangePolicy::Uniform, true, false) => true,
        (ChangePolicy::Uniform, false, true) => false,
        _ => return None,
    };
    if add {
        sample_non_edge(g, rng).map(|(u, v)| Change::Add(u, v))
    } else {
        Some(Change::Remove(EdgeId(rng.index(g.m()))))
    }
}

/// Whether a change fires at step boundary `t`.
pub fn poll_change(setting: &DynamicSetting, t: u64, rng: &mut RngStream) -> bool {
    match *setting {
        DynamicSetting::OneTime { at_step } => t == at_step,
        DynamicSetting::Probabilistic { p_d } => rng.bernoulli(p_d),
    }
}

/// Largest change rate under which the classical (1+1) EA keeps its
/// `O(m log m)` / `O(m)` guarantees: `1 / (2000 e m)`.
pub fn classic_rate_bound(m: usize) -> f64 {
    1.0 / (2000.0 * E * m.max(1) as f64)
}

/// Rate bound for weighted RLS: `1 / (5 w_max e m)`.
pub fn rls_weighted_rate_bound(w_max: u64, m: usize) -> f64 {
    1.0 / (5.0 * w_max.max(1) as f64 * E * m.max(1) as f64)
}

/// Phase length of the weighted (1+1) EA: `2 e OPT m + 10 e^2 m^2`.
pub fn ea_weighted_phase(opt: u64, m: usize) -> f64 {
    let m = m as f64;
    2.0 * E * opt as f64 * m + 10.0 * E * E * m * m
}

/// Rate bound for the weighted (1+1) EA: `1 / ((1 + eps) * phase)`.
pub fn ea_weighted_rate_bound(opt: u64, m: usize, eps: f64) -> f64 {
    1.0 / ((1.0 + eps) * ea_weighted_phase(opt, m.max(1)))
}

/// Change rate as configured: a constant or one of the derived bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RateRule {
    Fixed(f64),
    /// `auto_thm2`: [`classic_rate_bound`].
    ClassicBound,
    /// `auto_thm7`: [`rls_weighted_rate_bound`].
    RlsWeightedBound,
    /// `auto_thm9`: [`ea_weighted_rate_bound`].
    EaWeightedBound,
}

impl RateRule {
    pub fn needs_opt(&self) -> bool {
        matches!(self, RateRule::EaWeightedBound)
    }

    /// Resolves the rate for an instance with edge bound `m`, maximum vertex
    /// weight `w_max` and optimum `opt` (only read by the EA bound).
    pub fn resolve(&self, m: usize, w_max: u64, opt: Option<u64>, eps: f64) -> Result<f64> {
        let p = match *self {
            RateRule::Fixed(p) => p,
            RateRule::ClassicBound => classic_rate_bound(m),
            RateRule::RlsWeightedBound => rls_weighted_rate_bound(w_max, m),
            RateRule::EaWeightedBound => {
                let opt = opt.ok_or_else(|| Error::Invalid("auto_thm9 needs the optimum".into()))?;
                ea_weighted_rate_bound(opt, m, eps)
            }
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Invalid(format!("change probability {p} outside [0, 1]")));
        }
        Ok(p)
    }

    pub fn token(&self) -> String {
        match self {
            RateRule::Fixed(p) => format!("{p}"),
            RateRule::ClassicBound => "auto_thm2".into(),
            RateRule::RlsWeightedBound => "auto_thm7".into(),
            RateRule::EaWeightedBound => "auto_thm9".into(),
        }
    }
}

impl std::str::FromStr for RateRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto_thm2" => Ok(RateRule::ClassicBound),
            "auto_thm7" => Ok(RateRule::RlsWeightedBound),
            "auto_thm9" => Ok(RateRule::EaWeightedBound),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad change probability `{other}`")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Invalid(format!("change probability {p} outside [0, 1]")));
                }
                Ok(RateRule::Fixed(p))
            }
        }
    }
}

/// Scripted change addressed by endpoints, resolved against the graph when it fires.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScriptedChange {
    pub at: u64,
    pub add: bool,
    pub u: usize,
    pub v: usize,
}

impl ScriptedChange {
    pub fn resolve(&self, g: &Graph) -> Result<Change> {
        if self.add {
            Ok(Change::Add(self.u, self.v))
        } else {
            g.find_edge(self.u, self.v).map(Change::Remove).ok_or_else(|| {
                Error::InvalidChange(format!("edge {} not present", Edge::new(self.u, self.v)))
            })
        }
    }
}

/// Parses `at <t> add <u> <v>` / `at <t> del <u> <v>` lines with strictly increasing `t`.
pub fn parse_script(text: &str) -> Result<Vec<ScriptedChange>> {
    let mut out: Vec<ScriptedChange> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [at, t, kind, u, v] = fields[..] else {
            return Err(Error::parse(line, "expected `at <t> add|del <u> <v>`"));
        };
        if at != "at" {
            return Err(Error::parse(line, format!("expected `at`, got `{at}`")));
        }
        let num = |f: &str| f.parse::<u64>().map_err(|_| Error::parse(line, format!("bad integer `{f}`")));
        let add = match kind {
            "add" => true,
            "del" => false,
            other => return Err(Error::parse(line, format!("unknown change `{other}`"))),
        };
        let c = ScriptedChange { at: num(t)?, add, u: num(u)? as usize, v: num(v)? as usize };
        if c.u == c.v {
            return Err(Error::parse(line, "self-loop"));
        }
        if out.last().is_some_and(|p| p.at >= c.at) {
            return Err(Error::parse(line, "change steps must be strictly increasing"));
        }
        out.push(c);
    }
    Ok(out)
}
