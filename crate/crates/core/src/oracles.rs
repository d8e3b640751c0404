//! Brute-force ground truth for small instances.
//!
//! None of this runs inside the search loop; the oracles certify what the
//! heuristics report and gate the property tests.

use std::collections::BTreeSet;

use crate::classical::{fitness_classic, EdgeSolution};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weighted::{loads, DualSolution};

/// Largest vertex count accepted by [`exact_min_vc`].
pub const MAX_VC_VERTICES: usize = 24;
/// Largest edge count accepted by the dual enumerations.
pub const MAX_DUAL_EDGES: usize = 12;
/// Largest vertex weight accepted by the dual enumerations.
pub const MAX_DUAL_WEIGHT: u64 = 8;

pub fn is_matching(s: &EdgeSolution, g: &Graph) -> Result<bool> {
    s.check(g)?;
    let mut used = vec![false; g.n() + 1];
    for i in s.selected() {
        let e = g.edges()[i];
        if used[e.u] || used[e.v] {
            return Ok(false);
        }
        used[e.u] = true;
        used[e.v] = true;
    }
    Ok(true)
}

pub fn is_maximal_matching(s: &EdgeSolution, g: &Graph) -> Result<bool> {
    Ok(is_matching(s, g)? && fitness_classic(s, g)?.uncovered == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCover {
    pub weight: u64,
    pub cover: BTreeSet<usize>,
}

struct CoverSearch<'a> {
    g: &'a Graph,
    nbr: Vec<u32>,
    best_weight: u64,
    best_mask: u32,
}

impl CoverSearch<'_> {
    fn mask_weight(&self, mask: u32) -> u64 {
        (0..self.g.n()).filter(|&i| mask >> i & 1 == 1).map(|i| self.g.weight(i + 1)).sum()
    }

    fn search(&mut self, included: u32, weight: u64) {
        if weight > self.best_weight {
            return;
        }
        // lowest vertex outside the cover with an uncovered incident edge
        let open = (0..self.g.n()).find(|&i| included >> i & 1 == 0 && self.nbr[i] & !included != 0);
        let Some(u) = open else {
            if weight < self.best_weight || included < self.best_mask {
                self.best_weight = weight;
                self.best_mask = included;
            }
            return;
        };
        self.search(included | 1 << u, weight + self.g.weight(u + 1));
        let forced = self.nbr[u] & !included;
        self.search(included | forced, weight + self.mask_weight(forced));
    }
}

/// Minimum-weight vertex cover by exhaustive branching.
///
/// Every cover either contains a vertex `u` or all of its neighbours; the
/// search branches on that choice and prunes branches heavier than the best
/// cover found so far. Among optimal covers the one with the smallest bitmask
/// (vertex `v` at bit `v - 1`) is returned, the same set a plain subset scan
/// in increasing mask order keeps.
pub fn exact_min_vc(g: &Graph) -> Result<MinCover> {
    if g.n() > MAX_VC_VERTICES {
        return Err(Error::TooLarge(format!("{} vertices (limit {MAX_VC_VERTICES})", g.n())));
    }
    let mut nbr = vec![0u32; g.n()];
    for e in g.edges() {
        nbr[e.u - 1] |= 1 << (e.v - 1);
        nbr[e.v - 1] |= 1 << (e.u - 1);
    }
    let mut search = CoverSearch { g, nbr, best_weight: g.total_weight()?, best_mask: 0 };
    search.best_mask = (1u32 << g.n()) - 1;
    search.search(0, 0);
    let cover = (0..g.n()).filter(|&i| search.best_mask >> i & 1 == 1).map(|i| i + 1).collect();
    Ok(MinCover { weight: search.best_weight, cover })
}

pub fn covers_all_edges(cover: &BTreeSet<usize>, g: &Graph) -> bool {
    g.edges().iter().all(|e| cover.contains(&e.u) || cover.contains(&e.v))
}

pub fn cover_weight(cover: &BTreeSet<usize>, g: &Graph) -> u64 {
    cover.iter().map(|&v| g.weight(v)).sum()
}

/// `cover` covers every edge and weighs at most twice the optimum.
pub fn is_2_approx(cover: &BTreeSet<usize>, g: &Graph) -> Result<bool> {
    if let Some(&v) = cover.iter().find(|&&v| v == 0 || v > g.n()) {
        return Err(Error::BadVertex { v, n: g.n() });
    }
    if !covers_all_edges(cover, g) {
        return Ok(false);
    }
    let opt = exact_min_vc(g)?;
    Ok(cover_weight(cover, g) <= 2 * opt.weight)
}

pub fn dual_feasible(s: &DualSolution, g: &Graph) -> Result<bool> {
    let load = loads(s, g)?;
    Ok((1..=g.n()).all(|v| load[v] <= g.weight(v)))
}

/// No single edge weight can rise by one without breaking feasibility.
pub fn dual_maximal(s: &DualSolution, g: &Graph) -> Result<bool> {
    let load = loads(s, g)?;
    if (1..=g.n()).any(|v| load[v] > g.weight(v)) {
        return Err(Error::Infeasible);
    }
    Ok(g.edges().iter().all(|e| load[e.u] == g.weight(e.u) || load[e.v] == g.weight(e.v)))
}

fn check_dual_caps(g: &Graph) -> Result<()> {
    if g.m() > MAX_DUAL_EDGES {
        return Err(Error::TooLarge(format!("{} edges (limit {MAX_DUAL_EDGES})", g.m())));
    }
    if g.max_weight() > MAX_DUAL_WEIGHT {
        return Err(Error::TooLarge(format!(
            "vertex weight {} (limit {MAX_DUAL_WEIGHT})",
            g.max_weight()
        )));
    }
    Ok(())
}

struct DualSearch<'a> {
    g: &'a Graph,
    base: &'a [u64],
    slack: Vec<u64>,
    best: u64,
}

impl DualSearch<'_> {
    fn room(&self, j: usize) -> u64 {
        let e = self.g.edges()[j];
        self.slack[e.u].min(self.slack[e.v])
    }

    fn search(&mut self, j: usize, gained: u64) {
        let m = self.g.m();
        if j == m {
            self.best = self.best.max(gained);
            return;
        }
        let bound: u64 = gained + (j..m).map(|k| self.room(k)).sum::<u64>();
        if bound <= self.best {
            return;
        }
        let e = self.g.edges()[j];
        let room = self.room(j);
        for add in (0..=room).rev() {
            self.slack[e.u] -= add;
            self.slack[e.v] -= add;
            self.search(j + 1, gained + add);
            self.slack[e.u] += add;
            self.slack[e.v] += add;
        }
    }
}

/// Largest total weight that can be added to `base` by raising edge weights only.
fn max_extension(g: &Graph, base: &DualSolution) -> Result<u64> {
    check_dual_caps(g)?;
    let load = loads(base, g)?;
    let mut slack = vec![0u64; g.n() + 1];
    for v in 1..=g.n() {
        slack[v] = g.weight(v).checked_sub(load[v]).ok_or(Error::Infeasible)?;
    }
    let mut search = DualSearch { g, base: base.weights(), slack, best: 0 };
    search.search(0, 0);
    debug_assert_eq!(search.base.len(), g.m());
    Ok(search.best)
}

/// Weight still missing to the heaviest maximal dual reachable from `s` by
/// increases only. Zero exactly when `s` is maximal.
pub fn gap_g(s: &DualSolution, g: &Graph) -> Result<u64> {
    max_extension(g, s)
}

/// Weight missing to the maximum dual solution.
pub fn gap_g_star(s: &DualSolution, g: &Graph) -> Result<u64> {
    check_dual_caps(g)?;
    if !dual_feasible(s, g)? {
        return Err(Error::Infeasible);
    }
    let best = max_dual_value(g)?;
    Ok(best - s.total())
}

/// Value of the maximum integer dual solution.
pub fn max_dual_value(g: &Graph) -> Result<u64> {
    max_extension(g, &DualSolution::zeros(g.m()))
}

/// Every feasible integer dual of a small instance, in lexicographic order.
pub fn feasible_duals(g: &Graph) -> Result<Vec<DualSolution>> {
    check_dual_caps(g)?;
    fn walk(g: &Graph, j: usize, slack: &mut [u64], cur: &mut Vec<u64>, out: &mut Vec<DualSolution>) {
        if j == g.m() {
            out.push(DualSolution::from_weights(cur.clone()));
            return;
        }
        let e = g.edges()[j];
        for w in 0..=slack[e.u].min(slack[e.v]) {
            slack[e.u] -= w;
            slack[e.v] -= w;
            cur.push(w);
            walk(g, j + 1, slack, cur, out);
            cur.pop();
            slack[e.u] += w;
            slack[e.v] += w;
        }
    }
    let mut slack: Vec<u64> = std::iter::once(0).chain(g.weights().iter().copied()).collect();
    let mut out = Vec::new();
    walk(g, 0, &mut slack, &mut Vec::new(), &mut out);
    Ok(out)
}
