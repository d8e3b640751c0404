//! Solution files and the oracle-backed verification report.
//!
//! A solution file holds one non-comment line, either `sol classic <bits>`
//! or `sol weighted <w> <w> ...`, with entries in graph-file edge order.

use std::collections::BTreeSet;
use std::fmt;

use crate::classical::cover_set;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::harness::Solution;
use crate::oracles::{
    cover_weight, covers_all_edges, dual_feasible, dual_maximal, exact_min_vc, is_matching, is_maximal_matching,
    MAX_VC_VERTICES,
};
use crate::weighted::{induced_cover, DualSolution};
use crate::Problem;

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut found = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if found.is_some() {
            return Err(Error::parse(line_no, "more than one solution line"));
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("sol") {
            return Err(Error::parse(line_no, "expected `sol classic|weighted ...`"));
        }
        let kind: Problem = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, "missing problem"))?
            .parse()
            .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
        let rest: Vec<&str> = parts.collect();
        let sol = match kind {
            Problem::Classic => {
                let bits = match rest.as_slice() {
                    [] => "",
                    [bits] => bits,
                    _ => return Err(Error::parse(line_no, "classic solution is a single bitstring")),
                };
                Solution::Classic(bits.parse().map_err(|e: Error| Error::parse(line_no, e.to_string()))?)
            }
            Problem::Weighted => {
                let weights = rest
                    .iter()
                    .map(|t| t.parse::<u64>().map_err(|_| Error::parse(line_no, format!("bad weight `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                Solution::Weighted(DualSolution::from_weights(weights))
            }
        };
        found = Some(sol);
    }
    found.ok_or_else(|| Error::parse(0, "no solution line"))
}

pub fn format_solution(s: &Solution) -> String {
    match s {
        Solution::Classic(s) => format!("sol classic {s}"),
        Solution::Weighted(s) if s.is_empty() => "sol weighted".to_string(),
        Solution::Weighted(s) => format!("sol weighted {s}"),
    }
}

/// Oracle checks of a solution against its graph. `None` marks checks that
/// do not apply to the variant or exceed the oracle's size cap.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub problem: Problem,
    pub matching: Option<bool>,
    pub maximal: Option<bool>,
    pub feasible: Option<bool>,
    pub maximal_dual: Option<bool>,
    pub covers: bool,
    pub cover_weight: u64,
    pub dual_value: Option<u64>,
    pub opt: Option<u64>,
}

impl VerifyReport {
    pub fn ratio(&self) -> Option<f64> {
        self.opt.map(|o| if o == 0 { 1.0 } else { self.cover_weight as f64 / o as f64 })
    }

    pub fn weak_duality(&self) -> Option<bool> {
        match (self.dual_value, self.opt, self.feasible) {
            (Some(w), Some(o), Some(true)) => Some(w <= o),
            _ => None,
        }
    }

    pub fn two_approx(&self) -> Option<bool> {
        self.opt.map(|o| self.covers && self.cover_weight <= 2 * o)
    }

    /// Every applicable property holds.
    pub fn passed(&self) -> bool {
        [self.matching, self.maximal, self.feasible, self.maximal_dual, self.two_approx(), self.weak_duality()]
            .into_iter()
            .all(|c| c != Some(false))
            && self.covers
    }
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {}", self.problem.as_str())?;
        writeln!(f, "matching: {}", yes_no(self.matching))?;
        writeln!(f, "maximal: {}", yes_no(self.maximal))?;
        writeln!(f, "feasible: {}", yes_no(self.feasible))?;
        writeln!(f, "maximal-dual: {}", yes_no(self.maximal_dual))?;
        writeln!(f, "covers all edges: {}", yes_no(Some(self.covers)))?;
        writeln!(f, "cover weight: {}", self.cover_weight)?;
        if let Some(w) = self.dual_value {
            writeln!(f, "dual value: {w}")?;
        }
        match self.opt {
            Some(o) => writeln!(f, "OPT: {o}")?,
            None => writeln!(f, "OPT: n/a (more than {MAX_VC_VERTICES} vertices)")?,
        }
        match self.ratio() {
            Some(r) => writeln!(f, "ratio: {r:.4}")?,
            None => writeln!(f, "ratio: n/a")?,
        }
        writeln!(f, "2-approximation: {}", yes_no(self.two_approx()))?;
        if self.problem == Problem::Weighted {
            writeln!(f, "weak duality: {}", yes_no(self.weak_duality()))?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn check_len(len: usize, g: &Graph) -> Result<()> {
    if len != g.m() {
        return Err(Error::LengthMismatch { len, m: g.m() });
    }
    Ok(())
}

/// Builds the report; classic solutions are judged on cover cardinality.
pub fn verify(g: &Graph, s: &Solution) -> Result<VerifyReport> {
    let small = g.n() <= MAX_VC_VERTICES;
    match s {
        Solution::Classic(s) => {
            check_len(s.len(), g)?;
            let unit = Graph::from_edges(g.n(), g.m_max(), &g.edges().iter().map(|e| (e.u, e.v)).collect::<Vec<_>>())?;
            let cover = cover_set(s, &unit)?;
            Ok(VerifyReport {
                problem: Problem::Classic,
                matching: Some(is_matching(s, &unit)?),
                maximal: Some(is_maximal_matching(s, &unit)?),
                feasible: None,
                maximal_dual: None,
                covers: covers_all_edges(&cover, &unit),
                cover_weight: cover.len() as u64,
                dual_value: None,
                opt: if small { Some(exact_min_vc(&unit)?.weight) } else { None },
            })
        }
        Solution::Weighted(s) => {
            check_len(s.len(), g)?;
            let feasible = dual_feasible(s, g)?;
            let cover: BTreeSet<usize> = induced_cover(s, g)?;
            Ok(VerifyReport {
                problem: Problem::Weighted,
                matching: None,
                maximal: None,
                feasible: Some(feasible),
                maximal_dual: Some(feasible && dual_maximal(s, g)?),
                covers: covers_all_edges(&cover, g),
                cover_weight: cover_weight(&cover, g),
                dual_value: Some(s.total()),
                opt: if small { Some(exact_min_vc(g)?.weight) } else { None },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::parse("graph 3 3\nvw 2 2\ne 1 2\ne 2 3\n").unwrap()
    }

    #[test]
    fn round_trip() {
        for text in ["sol classic 0110", "sol weighted 1 0 3", "sol classic ", "sol weighted"] {
            let s = parse_solution(text).unwrap();
            assert_eq!(format_solution(&s).trim_end(), text.trim_end());
        }
        assert!(parse_solution("sol classic 012").is_err());
        assert!(parse_solution("sol weighted 1 -2").is_err());
        assert!(parse_solution("sol tabu 1").is_err());
        assert!(parse_solution("# nothing").is_err());
    }

    #[test]
    fn maximal_dual_passes() {
        let g = p3();
        let r = verify(&g, &Solution::Weighted(DualSolution::from_weights(vec![1, 1]))).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.opt, Some(2));
        assert_eq!(r.dual_value, Some(2));
    }

    #[test]
    fn non_maximal_dual_fails() {
        let g = p3();
        let r = verify(&g, &Solution::Weighted(DualSolution::from_weights(vec![1, 0]))).unwrap();
        assert_eq!(r.maximal_dual, Some(false));
        assert!(!r.passed());
        let r = verify(&g, &Solution::Weighted(DualSolution::from_weights(vec![2, 0]))).unwrap();
        assert_eq!(r.feasible, Some(false));
        assert!(!r.passed());
    }

    #[test]
    fn classic_reports() {
        let g = p3();
        let r = verify(&g, &Solution::Classic("10".parse().unwrap())).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.cover_weight, 2);
        let r = verify(&g, &Solution::Classic("11".parse().unwrap())).unwrap();
        assert_eq!(r.matching, Some(false));
        assert!(!r.passed());
        assert!(verify(&g, &Solution::Classic("1".parse().unwrap())).is_err());
    }
}
