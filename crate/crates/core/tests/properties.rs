mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use dynvc::classical::{fitness_classic, EdgeSolution};
use dynvc::dynamics::{apply_change, Change};
use dynvc::harness::{greedy_maximal_dual, greedy_maximal_matching, Search, Solution};
use dynvc::oracles::{exact_min_vc, is_matching};
use dynvc::weighted::{fitness_weighted, DualSolution};
use dynvc::{Algo, EdgeId, Graph, RngStream};

use common::*;

#[derive(Clone, Debug)]
enum Op {
    Add(usize, usize),
    /// Index into the current edge list, reduced modulo m.
    Remove(usize),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![(1usize..=8, 1usize..=8).prop_map(|(a, b)| Op::Add(a, b)), any::<usize>().prop_map(Op::Remove)]
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9, any::<u64>(), 1u64..=6).prop_map(|(n, seed, w_max)| {
        let mut rng = RngStream::from_seed(seed);
        let p = rng.unit();
        random_graph(&mut rng, n, p, w_max, 6)
    })
}

/// Turns an op into a change valid on `g`, if any.
fn to_change(g: &Graph, op: &Op) -> Option<Change> {
    match *op {
        Op::Add(a, b) => (a != b && a <= g.n() && b <= g.n() && !g.has_edge(a, b) && g.m() < g.m_max())
            .then_some(Change::Add(a, b)),
        Op::Remove(i) => (g.m() > 0).then(|| Change::Remove(EdgeId(i % g.m()))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph_tracks_a_set_model(ops in prop::collection::vec(op(), 0..60)) {
        let mut g = Graph::new(8, 20);
        let mut model: BTreeSet<(usize, usize)> = BTreeSet::new();
        for op in &ops {
            match *op {
                Op::Add(a, b) => {
                    let key = (a.min(b), a.max(b));
                    let ok = g.add_edge(a, b).is_ok();
                    prop_assert_eq!(ok, a != b && !model.contains(&key) && model.len() < 20);
                    if ok {
                        model.insert(key);
                    }
                }
                Op::Remove(i) => {
                    if g.m() == 0 {
                        prop_assert!(g.remove_edge(EdgeId(0)).is_err());
                        continue;
                    }
                    let id = EdgeId(i % g.m());
                    let e = g.edge(id);
                    g.remove_edge(id).unwrap();
                    model.remove(&(e.u, e.v));
                }
            }
            let edges: BTreeSet<(usize, usize)> = edge_list(&g).into_iter().collect();
            prop_assert_eq!(&edges, &model);
            let degree_sum: usize = (1..=8).map(|v| g.degree(v)).sum();
            prop_assert_eq!(degree_sum, 2 * g.m());
            for (i, e) in g.edges().iter().enumerate() {
                prop_assert_eq!(g.find_edge(e.u, e.v), Some(EdgeId(i)));
                prop_assert!(g.incident(e.u).contains(&i) && g.incident(e.v).contains(&i));
            }
        }
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn incremental_search_matches_full_evaluation(
        g in small_graph(),
        seed in any::<u64>(),
        ops in prop::collection::vec(op(), 0..8),
        weighted in any::<bool>(),
        ea in any::<bool>(),
    ) {
        let mut g = g;
        let mut rng = RngStream::from_seed(seed);
        let start = if weighted {
            Solution::Weighted(DualSolution::from_weights(random_feasible_dual(&mut rng, &g)))
        } else {
            Solution::Classic(EdgeSolution::from_bools(&(0..g.m()).map(|_| rng.coin()).collect::<Vec<_>>()))
        };
        let algo = if ea { Algo::Ea } else { Algo::Rls };
        let mut search = Search::new(&g, start).unwrap();
        let mut ops = ops.into_iter();
        for step in 0..120 {
            if step % 15 == 0 {
                if let Some(c) = ops.next().and_then(|o| to_change(&g, &o)) {
                    search.apply(&mut g, &c).unwrap();
                }
            }
            if g.m() > 0 {
                search.step(&g, algo, &mut rng);
            }
            match search.solution() {
                Solution::Classic(s) => {
                    let f = fitness_classic(&s, &g).unwrap();
                    prop_assert_eq!(search.uncovered(), f.uncovered);
                    let bits: Vec<bool> = (0..s.len()).map(|i| s.get(i)).collect();
                    prop_assert_eq!(f.uncovered, classic_terms(&g, &bits).1);
                }
                Solution::Weighted(s) => {
                    let f = fitness_weighted(&s, &g).unwrap();
                    prop_assert_eq!(search.uncovered(), f.uncovered);
                    prop_assert_eq!(search.total_weight(), f.total_weight);
                    prop_assert_eq!(f.uncovered, weighted_uncovered_of(&g, s.weights()));
                    // started feasible, so never infeasible
                    prop_assert_eq!(violations_of(&g, s.weights()), 0);
                }
            }
        }
    }

    #[test]
    fn changes_preserve_matchings_and_feasibility(
        g in small_graph(),
        seed in any::<u64>(),
        ops in prop::collection::vec(op(), 1..20),
    ) {
        let mut rng = RngStream::from_seed(seed);
        let mut gc = g.clone();
        let mut gw = g.clone();
        let mut matching = greedy_maximal_matching(&gc, &mut rng);
        let mut dual = greedy_maximal_dual(&gw, &mut rng);
        for op in &ops {
            if let Some(c) = to_change(&gc, op) {
                apply_change(&mut gc, &mut matching, &c).unwrap();
                prop_assert!(is_matching(&matching, &gc).unwrap());
            }
            if let Some(c) = to_change(&gw, op) {
                apply_change(&mut gw, &mut dual, &c).unwrap();
                prop_assert!(is_feasible(&gw, dual.weights()));
            }
        }
    }

    #[test]
    fn exact_cover_matches_subset_scan(g in small_graph()) {
        let best = exact_min_vc(&g).unwrap();
        prop_assert_eq!(best.weight, brute_min_vc(&g));
        let cover: BTreeSet<usize> = best.cover.iter().copied().collect();
        prop_assert!(edge_list(&g).iter().all(|&(u, v)| cover.contains(&u) || cover.contains(&v)));
    }
}
