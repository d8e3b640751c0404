//! Brute-force reference computations written independently of the library,
//! straight from the definitions. Only usable on small graphs.
#![allow(dead_code)]

use std::collections::HashMap;

use dynvc::{Graph, RngStream};

pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

/// Minimum vertex cover weight by scanning every vertex subset.
pub fn brute_min_vc(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 20, "brute force limited to 20 vertices");
    let masks: Vec<(u32, u32)> = edge_list(g).iter().map(|&(u, v)| (1 << (u - 1), 1 << (v - 1))).collect();
    let w: Vec<u64> = (1..=n).map(|v| g.weight(v)).collect();
    let mut best = u64::MAX;
    for set in 0u32..(1u32 << n) {
        if masks.iter().all(|&(a, b)| set & (a | b) != 0) {
            let total = (0..n).filter(|i| set >> i & 1 == 1).map(|i| w[i]).sum();
            best = best.min(total);
        }
    }
    best
}

/// Independent vertex loads of a dual weight vector.
pub fn loads_of(g: &Graph, s: &[u64]) -> Vec<u64> {
    let mut load = vec![0; g.n() + 1];
    for (&(u, v), &w) in edge_list(g).iter().zip(s) {
        load[u] += w;
        load[v] += w;
    }
    load
}

pub fn violations_of(g: &Graph, s: &[u64]) -> u64 {
    let load = loads_of(g, s);
    (1..=g.n()).filter(|&v| load[v] > g.weight(v)).count() as u64
}

/// Edges with no endpoint whose load reaches its weight.
pub fn weighted_uncovered_of(g: &Graph, s: &[u64]) -> u64 {
    let load = loads_of(g, s);
    edge_list(g).iter().filter(|&&(u, v)| load[u] < g.weight(u) && load[v] < g.weight(v)).count() as u64
}

pub fn is_feasible(g: &Graph, s: &[u64]) -> bool {
    violations_of(g, s) == 0
}

/// Feasible and every edge has a saturated endpoint.
pub fn is_maximal_dual(g: &Graph, s: &[u64]) -> bool {
    let load = loads_of(g, s);
    is_feasible(g, s) && edge_list(g).iter().all(|&(u, v)| load[u] == g.weight(u) || load[v] == g.weight(v))
}

/// Largest dual value of a maximal solution reachable from `s` by single +1
/// increments that keep feasibility (memoised DFS).
pub fn best_maximal_extension(g: &Graph, s: &[u64]) -> u64 {
    fn go(g: &Graph, s: &mut Vec<u64>, memo: &mut HashMap<Vec<u64>, u64>) -> u64 {
        if let Some(&v) = memo.get(s) {
            return v;
        }
        let mut best = None;
        for i in 0..s.len() {
            s[i] += 1;
            if is_feasible(g, s) {
                let v = go(g, s, memo);
                best = Some(best.map_or(v, |b: u64| b.max(v)));
            }
            s[i] -= 1;
        }
        // no feasible increment: `s` itself is maximal
        let v = best.unwrap_or_else(|| s.iter().sum());
        memo.insert(s.clone(), v);
        v
    }
    go(g, &mut s.to_vec(), &mut HashMap::new())
}

/// Classic fitness pieces from scratch: (ordered conflicting pairs, uncovered, cover size).
pub fn classic_terms(g: &Graph, bits: &[bool]) -> (u64, u64, u64) {
    let edges = edge_list(g);
    let chosen: Vec<(usize, usize)> = edges.iter().zip(bits).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
    let mut ordered = 0;
    for (i, a) in chosen.iter().enumerate() {
        for (j, b) in chosen.iter().enumerate() {
            if i != j && (a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1) {
                ordered += 1;
            }
        }
    }
    let mut in_cover = vec![false; g.n() + 1];
    for &(u, v) in &chosen {
        in_cover[u] = true;
        in_cover[v] = true;
    }
    let uncovered = edges.iter().filter(|&&(u, v)| !in_cover[u] && !in_cover[v]).count() as u64;
    let size = in_cover.iter().filter(|&&c| c).count() as u64;
    (ordered, uncovered, size)
}

pub fn is_maximal_matching_bits(g: &Graph, bits: &[bool]) -> bool {
    let (ordered, uncovered, _) = classic_terms(g, bits);
    ordered == 0 && uncovered == 0
}

/// Random graph on `n` vertices: each pair present with probability `p`,
/// weights uniform in `1..=w_max`, room for `extra` insertions.
pub fn random_graph(rng: &mut RngStream, n: usize, p: f64, w_max: u64, extra: usize) -> Graph {
    let weights = (0..n).map(|_| rng.range_inclusive(1, w_max)).collect();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let chosen: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.bernoulli(p)).collect();
    let m_max = (chosen.len() + extra).min(pairs.len()).max(1);
    let mut g = Graph::with_weights(weights, m_max).unwrap();
    for (u, v) in chosen {
        g.add_edge(u, v).unwrap();
    }
    g
}

/// A random feasible dual: raise random edges by random amounts within slack.
pub fn random_feasible_dual(rng: &mut RngStream, g: &Graph) -> Vec<u64> {
    let edges = edge_list(g);
    let mut s = vec![0; edges.len()];
    let mut slack: Vec<u64> = (0..=g.n()).map(|v| if v == 0 { 0 } else { g.weight(v) }).collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    rng.shuffle(&mut order);
    for i in order {
        let (u, v) = edges[i];
        let room = slack[u].min(slack[v]);
        let w = if rng.coin() { room } else { rng.range_inclusive(0, room) };
        s[i] = w;
        slack[u] -= w;
        slack[v] -= w;
    }
    s
}
