//! Randomized search heuristics for the dynamic vertex cover problem.
//!
//! Two problem variants share one dynamic graph:
//!
//! * [`classical`]: unweighted vertex cover with the edge-selection encoding.
//!   A solution is a bit per edge; the cover is the set of endpoints of the
//!   selected edges. The (1+1) EA and RLS minimise a lexicographic fitness
//!   whose optima are maximal matchings, i.e. 2-approximate covers.
//! * [`weighted`]: weighted vertex cover through the dual LP. A solution is a
//!   non-negative integer weight per edge; the cover is the set of vertices
//!   whose incident edge weight reaches the vertex weight. Maximal feasible
//!   duals induce 2-approximate covers.
//!
//! [`dynamics`] applies edge insertions and deletions to a graph together
//! with a solution, [`oracles`] holds brute-force ground truth for small
//! instances and [`harness`] runs seeded, reproducible experiments.

pub mod classical;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod mutation;
pub mod oracles;
pub mod rng;
pub mod solution_io;
pub mod weighted;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph};
pub use rng::RngStream;

/// Which search heuristic drives a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    /// (1+1) EA: every position mutates independently with probability 1/m.
    Ea,
    /// Randomized local search: exactly one uniformly chosen position mutates.
    Rls,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Ea => "ea",
            Algo::Rls => "rls",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ea" => Ok(Algo::Ea),
            "rls" => Ok(Algo::Rls),
            other => Err(Error::Invalid(format!("unknown algorithm `{other}` (expected ea|rls)"))),
        }
    }
}

/// Problem variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Classic,
    Weighted,
}

impl Problem {
    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Classic => "classic",
            Problem::Weighted => "weighted",
        }
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classic" => Ok(Problem::Classic),
            "weighted" => Ok(Problem::Weighted),
            other => Err(Error::Invalid(format!(
                "unknown problem `{other}` (expected classic|weighted)"
            ))),
        }
    }
}
