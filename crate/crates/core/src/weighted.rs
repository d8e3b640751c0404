//! Weighted vertex cover through the dual LP.
//!
//! A solution assigns a non-negative integer weight to every edge. The load of
//! a vertex is the total weight on its incident edges; the dual is feasible
//! when no load exceeds the vertex weight. Vertices whose load reaches their
//! weight form the induced cover. Fitness ranks solutions by fewer violated
//! vertices, then fewer uncovered edges, then larger total edge weight.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mutation::{sample_local, GlobalSampler};
use crate::rng::RngStream;
use crate::Algo;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DualSolution {
    weights: Vec<u64>,
}

impl DualSolution {
    pub fn zeros(m: usize) -> Self {
        DualSolution { weights: vec![0; m] }
    }

    pub fn from_weights(weights: Vec<u64>) -> Self {
        DualSolution { weights }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub(crate) fn set(&mut self, i: usize, w: u64) {
        self.weights[i] = w;
    }

    pub(crate) fn push(&mut self, w: u64) {
        self.weights.push(w);
    }

    pub(crate) fn swap_remove(&mut self, i: usize) -> u64 {
        self.weights.swap_remove(i)
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        if self.len() != g.m() {
            return Err(Error::LengthMismatch { len: self.len(), m: g.m() });
        }
        Ok(())
    }
}

impl fmt::Display for DualSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for w in &self.weights {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        Ok(())
    }
}

/// Fitness of a dual solution. `Ord` puts better solutions last, so the
/// algorithms accept a mutant iff it compares strictly greater.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightedFitness {
    /// Vertices whose load exceeds their weight.
    pub violations: u64,
    /// Edges with no endpoint in the induced cover.
    pub uncovered: u64,
    pub total_weight: u64,
}

impl Ord for WeightedFitness {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .violations
            .cmp(&self.violations)
            .then(other.uncovered.cmp(&self.uncovered))
            .then(self.total_weight.cmp(&other.total_weight))
    }
}

impl PartialOrd for WeightedFitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl WeightedFitness {
    /// Feasible and maximal, which for a feasible dual means nothing is uncovered.
    pub fn is_target(&self) -> bool {
        self.violations == 0 && self.uncovered == 0
    }
}

#[inline]
pub fn accepts(mutant: &WeightedFitness, current: &WeightedFitness) -> bool {
    mutant > current
}

/// Loads indexed by vertex id; slot 0 is unused.
pub fn loads(s: &DualSolution, g: &Graph) -> Result<Vec<u64>> {
    s.check(g)?;
    let mut load = vec![0u64; g.n() + 1];
    for (e, &w) in g.edges().iter().zip(&s.weights) {
        load[e.u] = load[e.u].checked_add(w).ok_or(Error::Overflow("vertex load"))?;
        load[e.v] = load[e.v].checked_add(w).ok_or(Error::Overflow("vertex load"))?;
    }
    Ok(load)
}

pub fn node_load(s: &DualSolution, g: &Graph, v: usize) -> Result<u64> {
    s.check(g)?;
    g.check_vertex(v)?;
    Ok(g.incident(v).iter().map(|&i| s.weights[i]).sum())
}

/// Vertices whose load is at least their weight (tight, or violated).
pub fn induced_cover(s: &DualSolution, g: &Graph) -> Result<BTreeSet<usize>> {
    let load = loads(s, g)?;
    Ok((1..=g.n()).filter(|&v| load[v] >= g.weight(v)).collect())
}

pub fn fitness_weighted(s: &DualSolution, g: &Graph) -> Result<WeightedFitness> {
    let load = loads(s, g)?;
    let covers = |v: usize| load[v] >= g.weight(v);
    let violations = (1..=g.n()).filter(|&v| load[v] > g.weight(v)).count() as u64;
    let uncovered = g.edges().iter().filter(|e| !covers(e.u) && !covers(e.v)).count() as u64;
    let total_weight = s
        .weights
        .iter()
        .try_fold(0u64, |acc, &w| acc.checked_add(w))
        .ok_or(Error::Overflow("total dual weight"))?;
    Ok(WeightedFitness { violations, uncovered, total_weight })
}

/// Mutation of a single edge weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightMove {
    pub edge: usize,
    /// `true` adds one, `false` subtracts one clamped at zero.
    pub up: bool,
}

impl WeightMove {
    #[inline]
    pub fn apply(self, w: u64) -> u64 {
        if self.up {
            w + 1
        } else {
            w.saturating_sub(1)
        }
    }
}

pub fn apply_moves(s: &DualSolution, moves: &[WeightMove]) -> DualSolution {
    let mut out = s.clone();
    for mv in moves {
        out.weights[mv.edge] = mv.apply(out.weights[mv.edge]);
    }
    out
}

fn draw_moves(positions: &[usize], rng: &mut RngStream, out: &mut Vec<WeightMove>) {
    out.clear();
    out.extend(positions.iter().map(|&edge| WeightMove { edge, up: !rng.coin() }));
}

/// Each edge mutates with probability `1/m`, moving up or down by a fair coin.
pub fn mutate_weight_global(s: &DualSolution, rng: &mut RngStream) -> DualSolution {
    let mut positions = Vec::new();
    GlobalSampler::new(s.len()).sample_into(rng, &mut positions);
    let mut moves = Vec::new();
    draw_moves(&positions, rng, &mut moves);
    apply_moves(s, &moves)
}

/// Exactly one uniformly chosen edge moves up or down by a fair coin.
pub fn mutate_weight_local(s: &DualSolution, rng: &mut RngStream) -> DualSolution {
    let mut moves = Vec::new();
    let positions: Vec<usize> = sample_local(s.len(), rng).into_iter().collect();
    draw_moves(&positions, rng, &mut moves);
    apply_moves(s, &moves)
}

pub fn step_with_mutant(s: &DualSolution, mutant: DualSolution, g: &Graph) -> Result<DualSolution> {
    let current = fitness_weighted(s, g)?;
    let candidate = fitness_weighted(&mutant, g)?;
    Ok(if accepts(&candidate, &current) { mutant } else { s.clone() })
}

pub fn step_weighted(s: &DualSolution, g: &Graph, algo: Algo, rng: &mut RngStream) -> Result<DualSolution> {
    let mutant = match algo {
        Algo::Ea => mutate_weight_global(s, rng),
        Algo::Rls => mutate_weight_local(s, rng),
    };
    step_with_mutant(s, mutant, g)
}

/// Incremental search state: vertex loads are maintained so that evaluating a
/// mutant only touches the neighbourhoods of the changed edges.
#[derive(Clone, Debug)]
pub struct WeightedSearch {
    solution: DualSolution,
    load: Vec<u64>,
    fitness: WeightedFitness,
    sampler: GlobalSampler,
    positions: Vec<usize>,
    moves: Vec<WeightMove>,
    undo: Vec<(usize, u64)>,
}

impl WeightedSearch {
    pub fn new(g: &Graph, solution: DualSolution) -> Result<Self> {
        let fitness = fitness_weighted(&solution, g)?;
        let load = loads(&solution, g)?;
        Ok(WeightedSearch {
            solution,
            load,
            fitness,
            sampler: GlobalSampler::new(g.m()),
            positions: Vec::new(),
            moves: Vec::new(),
            undo: Vec::new(),
        })
    }

    pub fn solution(&self) -> &DualSolution {
        &self.solution
    }

    pub fn into_solution(self) -> DualSolution {
        self.solution
    }

    pub fn fitness(&self) -> WeightedFitness {
        self.fitness
    }

    pub fn is_target(&self) -> bool {
        self.fitness.is_target()
    }

    pub fn reset(&mut self, g: &Graph, solution: DualSolution) -> Result<()> {
        *self = WeightedSearch::new(g, solution)?;
        Ok(())
    }

    #[inline]
    fn covers(&self, g: &Graph, v: usize) -> bool {
        self.load[v] >= g.weight(v)
    }

    fn set_load(&mut self, g: &Graph, x: usize, new: u64) {
        let w = g.weight(x);
        let old = self.load[x];
        let was_violated = old > w;
        let was_cover = old >= w;
        self.load[x] = new;
        let is_violated = new > w;
        let is_cover = new >= w;
        if was_violated != is_violated {
            if is_violated {
                self.fitness.violations += 1;
            } else {
                self.fitness.violations -= 1;
            }
        }
        if was_cover != is_cover {
            for &id in g.incident(x) {
                let y = g.edges()[id].other(x);
                if !self.covers(g, y) {
                    if is_cover {
                        self.fitness.uncovered -= 1;
                    } else {
                        self.fitness.uncovered += 1;
                    }
                }
            }
        }
    }

    fn set_weight(&mut self, g: &Graph, i: usize, new: u64) {
        let old = self.solution.weights[i];
        if old == new {
            return;
        }
        let e = g.edges()[i];
        self.solution.weights[i] = new;
        self.fitness.total_weight = self.fitness.total_weight - old + new;
        for x in [e.u, e.v] {
            let l = self.load[x] - old + new;
            self.set_load(g, x, l);
        }
    }

    pub fn step(&mut self, g: &Graph, algo: Algo, rng: &mut RngStream) -> bool {
        let mut positions = std::mem::take(&mut self.positions);
        let mut moves = std::mem::take(&mut self.moves);
        match algo {
            Algo::Ea => {
                if self.sampler.m() != g.m() {
                    self.sampler = GlobalSampler::new(g.m());
                }
                self.sampler.sample_into(rng, &mut positions);
            }
            Algo::Rls => {
                positions.clear();
                positions.extend(sample_local(g.m(), rng));
            }
        }
        draw_moves(&positions, rng, &mut moves);
        let accepted = self.try_moves(g, &moves);
        self.positions = positions;
        self.moves = moves;
        accepted
    }

    /// Applies the moves and keeps them iff the fitness strictly improves.
    pub fn try_moves(&mut self, g: &Graph, moves: &[WeightMove]) -> bool {
        let before = self.fitness;
        self.undo.clear();
        for mv in moves {
            let old = self.solution.weights[mv.edge];
            self.undo.push((mv.edge, old));
            self.set_weight(g, mv.edge, mv.apply(old));
        }
        if accepts(&self.fitness, &before) {
            true
        } else {
            let undo = std::mem::take(&mut self.undo);
            for &(i, w) in undo.iter().rev() {
                self.set_weight(g, i, w);
            }
            self.undo = undo;
            debug_assert_eq!(self.fitness, before);
            false
        }
    }
}
