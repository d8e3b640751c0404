//! Classical vertex cover with the edge-selection encoding.
//!
//! A solution selects a subset of edges; its cover is the set of endpoints of
//! the selected edges. The fitness ranks solutions lexicographically by
//! (adjacent selected pairs, uncovered edges, cover size), all minimised, so
//! any optimum is a maximal matching and its cover is 2-approximate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mutation::{sample_local, GlobalSampler};
use crate::rng::RngStream;
use crate::Algo;

/// One bit per current edge; bit `i` set iff edge `i` is selected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSolution {
    bits: BitVec,
}

impl EdgeSolution {
    pub fn zeros(m: usize) -> Self {
        EdgeSolution { bits: bitvec![0; m] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        EdgeSolution { bits: bits.iter().copied().collect() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, on: bool) {
        self.bits.set(i, on);
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        let b = self.bits[i];
        self.bits.set(i, !b);
    }

    pub fn count_selected(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn hamming(&self, other: &EdgeSolution) -> usize {
        self.bits.iter().zip(other.bits.iter()).filter(|(a, b)| **a != **b).count()
            + self.len().abs_diff(other.len())
    }

    pub(crate) fn push(&mut self, on: bool) {
        self.bits.push(on);
    }

    pub(crate) fn swap_remove(&mut self, i: usize) -> bool {
        self.bits.swap_remove(i)
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        if self.len() != g.m() {
            return Err(Error::LengthMismatch { len: self.len(), m: g.m() });
        }
        Ok(())
    }
}

impl fmt::Display for EdgeSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits.iter() {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for EdgeSolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!("bad bit `{other}` in solution"))),
            })
            .collect::<Result<BitVec>>()
            .map(|bits| EdgeSolution { bits })
    }
}

/// Lexicographic fitness, smaller is better.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicFitness {
    /// Unordered pairs of selected edges sharing an endpoint.
    pub pairs: u64,
    /// Edges with neither endpoint in the cover.
    pub uncovered: u64,
    pub cover_size: u64,
}

impl ClassicFitness {
    /// Maximal matching: no conflicting pair and nothing left uncovered.
    pub fn is_target(&self) -> bool {
        self.pairs == 0 && self.uncovered == 0
    }
}

fn selected_degrees(s: &EdgeSolution, g: &Graph) -> Vec<u32> {
    let mut deg = vec![0u32; g.n() + 1];
    for i in s.selected() {
        let e = g.edges()[i];
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    deg
}

/// Endpoints of the selected edges.
pub fn cover_set(s: &EdgeSolution, g: &Graph) -> Result<BTreeSet<usize>> {
    s.check(g)?;
    Ok(s.selected().flat_map(|i| {
        let e = g.edges()[i];
        [e.u, e.v]
    })
    .collect())
}

pub fn fitness_classic(s: &EdgeSolution, g: &Graph) -> Result<ClassicFitness> {
    s.check(g)?;
    let deg = selected_degrees(s, g);
    // two distinct edges of a simple graph share at most one vertex
    let pairs = deg.iter().map(|&d| (d as u64) * (d as u64).saturating_sub(1) / 2).sum();
    let uncovered = g.edges().iter().filter(|e| deg[e.u] == 0 && deg[e.v] == 0).count() as u64;
    let cover_size = deg.iter().filter(|&&d| d > 0).count() as u64;
    Ok(ClassicFitness { pairs, uncovered, cover_size })
}

/// The (1+1) EA accepts on less-or-equal, so plateau moves are allowed.
#[inline]
pub fn accepts(mutant: &ClassicFitness, current: &ClassicFitness) -> bool {
    mutant.cmp(current) != Ordering::Greater
}

/// Flips each bit independently with probability `1/m`.
pub fn mutate_global(s: &EdgeSolution, rng: &mut RngStream) -> EdgeSolution {
    let mut out = s.clone();
    let mut flips = Vec::new();
    GlobalSampler::new(s.len()).sample_into(rng, &mut flips);
    for i in flips {
        out.flip(i);
    }
    out
}

/// Flips exactly one uniformly chosen bit.
pub fn mutate_local(s: &EdgeSolution, rng: &mut RngStream) -> EdgeSolution {
    let mut out = s.clone();
    if let Some(i) = sample_local(s.len(), rng) {
        out.flip(i);
    }
    out
}

/// Acceptance step against an explicit mutant.
pub fn step_with_mutant(s: &EdgeSolution, mutant: EdgeSolution, g: &Graph) -> Result<EdgeSolution> {
    let current = fitness_classic(s, g)?;
    let candidate = fitness_classic(&mutant, g)?;
    Ok(if accepts(&candidate, &current) { mutant } else { s.clone() })
}

/// One iteration of the (1+1) EA or RLS on the classical problem.
pub fn step_classic(s: &EdgeSolution, g: &Graph, algo: Algo, rng: &mut RngStream) -> Result<EdgeSolution> {
    let mutant = match algo {
        Algo::Ea => mutate_global(s, rng),
        Algo::Rls => mutate_local(s, rng),
    };
    step_with_mutant(s, mutant, g)
}

/// Incremental search state for the hot loop.
///
/// Keeps the number of selected edges at every vertex so that evaluating a
/// mutant costs time proportional to the degrees of the flipped edges'
/// endpoints instead of `O(n + m)`. Rejected mutants are undone in place.
#[derive(Clone, Debug)]
pub struct ClassicSearch {
    solution: EdgeSolution,
    sel_deg: Vec<u32>,
    fitness: ClassicFitness,
    sampler: GlobalSampler,
    flips: Vec<usize>,
}

impl ClassicSearch {
    pub fn new(g: &Graph, solution: EdgeSolution) -> Result<Self> {
        solution.check(g)?;
        let fitness = fitness_classic(&solution, g)?;
        let sel_deg = selected_degrees(&solution, g);
        Ok(ClassicSearch {
            solution,
            sel_deg,
            fitness,
            sampler: GlobalSampler::new(g.m()),
            flips: Vec::new(),
        })
    }

    pub fn solution(&self) -> &EdgeSolution {
        &self.solution
    }

    pub fn into_solution(self) -> EdgeSolution {
        self.solution
    }

    pub fn fitness(&self) -> ClassicFitness {
        self.fitness
    }

    pub fn is_target(&self) -> bool {
        self.fitness.is_target()
    }

    /// Replaces the solution after the graph changed underneath it.
    pub fn reset(&mut self, g: &Graph, solution: EdgeSolution) -> Result<()> {
        *self = ClassicSearch::new(g, solution)?;
        Ok(())
    }

    fn cover_gained(&mut self, g: &Graph, x: usize) {
        for &id in g.incident(x) {
            let y = g.edges()[id].other(x);
            if self.sel_deg[y] == 0 {
                self.fitness.uncovered -= 1;
            }
        }
        self.fitness.cover_size += 1;
    }

    fn cover_lost(&mut self, g: &Graph, x: usize) {
        for &id in g.incident(x) {
            let y = g.edges()[id].other(x);
            if self.sel_deg[y] == 0 {
                self.fitness.uncovered += 1;
            }
        }
        self.fitness.cover_size -= 1;
    }

    fn flip(&mut self, g: &Graph, i: usize) {
        let e = g.edges()[i];
        if self.solution.get(i) {
            self.solution.set(i, false);
            for x in [e.u, e.v] {
                self.sel_deg[x] -= 1;
                let d = self.sel_deg[x];
                self.fitness.pairs -= d as u64;
                if d == 0 {
                    self.cover_lost(g, x);
                }
            }
        } else {
            self.solution.set(i, true);
            for x in [e.u, e.v] {
                let d = self.sel_deg[x];
                self.fitness.pairs += d as u64;
                self.sel_deg[x] = d + 1;
                if d == 0 {
                    self.cover_gained(g, x);
                }
            }
        }
    }

    /// One mutation, evaluation and selection. Returns whether the mutant was kept.
    pub fn step(&mut self, g: &Graph, algo: Algo, rng: &mut RngStream) -> bool {
        let mut flips = std::mem::take(&mut self.flips);
        match algo {
            Algo::Ea => {
                if self.sampler.m() != g.m() {
                    self.sampler = GlobalSampler::new(g.m());
                }
                self.sampler.sample_into(rng, &mut flips);
            }
            Algo::Rls => {
                flips.clear();
                flips.extend(sample_local(g.m(), rng));
            }
        }
        let accepted = self.try_flips(g, &flips);
        self.flips = flips;
        accepted
    }

    /// Applies a flip set, keeps it if the fitness does not get worse.
    pub fn try_flips(&mut self, g: &Graph, flips: &[usize]) -> bool {
        let before = self.fitness;
        for &i in flips {
            self.flip(g, i);
        }
        if accepts(&self.fitness, &before) {
            true
        } else {
            for &i in flips.iter().rev() {
                self.flip(g, i);
            }
            debug_assert_eq!(self.fitness, before);
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, 3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    fn sol(s: &str) -> EdgeSolution {
        s.parse().unwrap()
    }

    #[test]
    fn cover_set_examples() {
        let g = triangle();
        assert!(cover_set(&sol("000"), &g).unwrap().is_empty());
        assert_eq!(cover_set(&sol("100"), &g).unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(cover_set(&sol("110"), &g).unwrap(), BTreeSet::from([1, 2, 3]));
        assert!(matches!(cover_set(&sol("10"), &g), Err(Error::LengthMismatch { len: 2, m: 3 })));
    }

    #[test]
    fn fitness_examples() {
        let g = triangle();
        let f = |s| fitness_classic(&sol(s), &g).unwrap();
        assert_eq!(f("000"), ClassicFitness { pairs: 0, uncovered: 3, cover_size: 0 });
        assert_eq!(f("100"), ClassicFitness { pairs: 0, uncovered: 0, cover_size: 2 });
        assert_eq!(f("110"), ClassicFitness { pairs: 1, uncovered: 0, cover_size: 3 });
        assert_eq!(f("111"), ClassicFitness { pairs: 3, uncovered: 0, cover_size: 3 });
        assert!(fitness_classic(&sol("1"), &g).is_err());
    }

    #[test]
    fn forced_mutants() {
        let g = triangle();
        assert_eq!(step_with_mutant(&sol("110"), sol("100"), &g).unwrap(), sol("100"));
        assert_eq!(step_with_mutant(&sol("100"), sol("110"), &g).unwrap(), sol("100"));
        assert_eq!(step_with_mutant(&sol("010"), sol("010"), &g).unwrap(), sol("010"));
    }

    #[test]
    fn plateau_moves_are_accepted() {
        let g = triangle();
        // two different maximal matchings with identical fitness
        assert_eq!(step_with_mutant(&sol("100"), sol("010"), &g).unwrap(), sol("010"));
    }

    #[test]
    fn local_mutation_on_single_edge() {
        let mut rng = RngStream::from_seed(0);
        assert_eq!(mutate_local(&sol("0"), &mut rng), sol("1"));
    }

    #[test]
    fn local_mutation_flips_exactly_one_uniform_bit() {
        let mut rng = RngStream::from_seed(42);
        let s = EdgeSolution::zeros(10);
        let draws = 100_000;
        let mut freq = [0usize; 10];
        for _ in 0..draws {
            let t = mutate_local(&s, &mut rng);
            assert_eq!(s.hamming(&t), 1);
            freq[t.selected().next().unwrap()] += 1;
        }
        for f in freq {
            let p = f as f64 / draws as f64;
            assert!((0.08..=0.12).contains(&p), "{p}");
        }
    }

    #[test]
    fn global_mutation_flips_one_bit_on_average() {
        let mut rng = RngStream::from_seed(7);
        let s = EdgeSolution::zeros(100);
        let draws = 100_000;
        let total: usize = (0..draws).map(|_| mutate_global(&s, &mut rng).count_selected()).sum();
        let mean = total as f64 / draws as f64;
        assert!((0.97..=1.03).contains(&mean), "{mean}");
    }

    #[test]
    fn empty_graph_mutation_is_a_no_op() {
        let g = Graph::new(3, 3);
        let mut rng = RngStream::from_seed(1);
        let s = EdgeSolution::zeros(0);
        assert_eq!(mutate_global(&s, &mut rng), s);
        assert_eq!(step_classic(&s, &g, Algo::Ea, &mut rng).unwrap(), s);
        let mut search = ClassicSearch::new(&g, s).unwrap();
        assert!(search.step(&g, Algo::Rls, &mut rng));
        assert!(search.is_target());
    }

    #[test]
    fn incremental_state_tracks_full_evaluation() {
        let g = Graph::from_edges(6, 15, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (5, 6), (2, 6), (3, 5)]).unwrap();
        let mut search = ClassicSearch::new(&g, EdgeSolution::zeros(g.m())).unwrap();
        let mut rng = RngStream::from_seed(99);
        for step in 0..5_000 {
            let algo = if step % 2 == 0 { Algo::Ea } else { Algo::Rls };
            search.step(&g, algo, &mut rng);
            assert_eq!(search.fitness(), fitness_classic(search.solution(), &g).unwrap());
        }
    }
}
