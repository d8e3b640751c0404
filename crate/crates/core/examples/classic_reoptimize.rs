//! Start from a maximal matching on a path, delete one matched edge and let
//! the (1+1) EA repair it.

use dynvc::classical::{cover_set, fitness_classic, ClassicSearch};
use dynvc::dynamics::{apply_change, Change};
use dynvc::harness::greedy_maximal_matching;
use dynvc::oracles::{exact_min_vc, is_maximal_matching};
use dynvc::{Algo, EdgeId, Graph, RngStream};

fn main() {
    let mut rng = RngStream::from_seed(7);
    let edges: Vec<(usize, usize)> = (1..20).map(|i| (i, i + 1)).collect();
    let mut g = Graph::from_edges(20, 38, &edges).unwrap();

    let mut s = greedy_maximal_matching(&g, &mut rng);
    println!("greedy matching: {} edges", s.count_selected());

    // delete the matched edge whose loss uncovers the most edges
    let victim = s
        .selected()
        .max_by_key(|&i| {
            let (mut h, mut t) = (g.clone(), s.clone());
            apply_change(&mut h, &mut t, &Change::Remove(EdgeId(i))).unwrap();
            fitness_classic(&t, &h).unwrap().uncovered
        })
        .unwrap();
    apply_change(&mut g, &mut s, &Change::Remove(EdgeId(victim))).unwrap();

    let mut search = ClassicSearch::new(&g, s).unwrap();
    println!("after deletion: {:?}", search.fitness());
    let mut steps = 0;
    while !search.is_target() {
        search.step(&g, Algo::Ea, &mut rng);
        steps += 1;
    }
    let s = search.into_solution();
    assert!(is_maximal_matching(&s, &g).unwrap());
    let cover = cover_set(&s, &g).unwrap();
    println!(
        "repaired in {steps} evaluations; cover {} vs optimum {}",
        cover.len(),
        exact_min_vc(&g).unwrap().weight
    );
}
