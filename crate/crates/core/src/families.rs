//! Instance generators.
//!
//! Generated graphs leave room for insertions: the edge bound is twice the
//! initial edge count, capped by the number of vertex pairs.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    /// Complete bipartite graph.
    Bipartite,
    /// Erdős–Rényi: `G(n, M)` with exactly `m` edges when `m` is given, else `G(n, 1/2)`.
    Gnp,
    /// A fixed graph loaded from a file.
    File { path: String, graph: Box<Graph> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Bipartite => "bipartite",
            Family::Gnp => "gnp",
            Family::File { .. } => "file",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "bipartite" => Family::Bipartite,
            "gnp" => Family::Gnp,
            other => {
                return Err(Error::Invalid(format!(
                    "unknown family `{other}` (expected path|cycle|star|bipartite|gnp|file)"
                )))
            }
        })
    }
}

/// How vertex weights are drawn for generated instances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightMode {
    /// Independent uniform weights in `1..=w_max`.
    #[default]
    Uniform,
    /// Every vertex gets `w_max`.
    Constant,
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(WeightMode::Uniform),
            "constant" => Ok(WeightMode::Constant),
            other => Err(Error::Invalid(format!("unknown weight mode `{other}` (expected uniform|constant)"))),
        }
    }
}

/// Everything needed to draw one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub w_max: u64,
    pub weights: WeightMode,
}

fn edge_bound(n: usize, m: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    (2 * m).max(1).min(pairs)
}

fn need(what: &str, family: &str) -> Error {
    Error::Invalid(format!("family `{family}` needs {what}"))
}

fn topology(spec: &InstanceSpec, rng: &mut RngStream) -> Result<(usize, Vec<(usize, usize)>)> {
    let name = spec.family.name();
    Ok(match &spec.family {
        Family::Path => {
            let n = match (spec.n, spec.m) {
                (_, Some(m)) => m + 1,
                (Some(n), None) => n,
                _ => return Err(need("--n or --m", name)),
            };
            (n, (1..n).map(|i| (i, i + 1)).collect())
        }
        Family::Cycle => {
            let n = spec.m.or(spec.n).ok_or_else(|| need("--n or --m", name))?;
            if n < 3 {
                return Err(Error::Invalid("a cycle needs at least 3 vertices".into()));
            }
            (n, (1..=n).map(|i| (i, i % n + 1)).collect())
        }
        Family::Star => {
            let n = match (spec.n, spec.m) {
                (_, Some(m)) => m + 1,
                (Some(n), None) => n,
                _ => return Err(need("--n or --m", name)),
            };
            (n, (2..=n).map(|i| (1, i)).collect())
        }
        Family::Bipartite => {
            let (a, b) = match (spec.n, spec.m) {
                (Some(n), _) => (n / 2, n - n / 2),
                (None, Some(m)) => {
                    let a = ((m as f64).sqrt() as usize).max(1);
                    (a, m / a)
                }
                _ => return Err(need("--n or --m", name)),
            };
            let edges = (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| (u, v))).collect();
            (a + b, edges)
        }
        Family::Gnp => {
            let n = spec.n.ok_or_else(|| need("--n", name))?;
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let edges = match spec.m {
                Some(m) => {
                    if m > pairs.len() {
                        return Err(Error::Invalid(format!("{m} edges do not fit on {n} vertices")));
                    }
                    // partial Fisher-Yates, then restore lexicographic order
                    let mut pairs = pairs;
                    for i in 0..m {
                        let j = i + rng.index(pairs.len() - i);
                        pairs.swap(i, j);
                    }
                    pairs.truncate(m);
                    pairs.sort_unstable();
                    pairs
                }
                None => pairs.into_iter().filter(|_| rng.coin()).collect(),
            };
            (n, edges)
        }
        Family::File { .. } => unreachable!("file graphs are not generated"),
    })
}

/// Draws an instance. File graphs are returned as stored.
pub fn generate(spec: &InstanceSpec, rng: &mut RngStream) -> Result<Graph> {
    if let Family::File { graph, .. } = &spec.family {
        return Ok((**graph).clone());
    }
    if spec.w_max == 0 {
        return Err(Error::Invalid("w_max must be at least 1".into()));
    }
    let (n, edges) = topology(spec, rng)?;
    let weights = (0..n)
        .map(|_| match spec.weights {
            WeightMode::Uniform => rng.range_inclusive(1, spec.w_max),
            WeightMode::Constant => spec.w_max,
        })
        .collect();
    let mut g = Graph::with_weights(weights, edge_bound(n, edges.len()))?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}
