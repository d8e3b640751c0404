//! Weighted vertex cover through the dual LP, solved from scratch by RLS.

use dynvc::oracles::{cover_weight, dual_maximal, exact_min_vc};
use dynvc::weighted::{induced_cover, DualSolution, WeightedSearch};
use dynvc::{Algo, Graph, RngStream};

fn main() {
    let text = "\
graph 6 12
vw 1 4
vw 2 1
vw 3 3
vw 4 2
vw 5 5
vw 6 2
e 1 2
e 1 3
e 2 3
e 3 4
e 4 5
e 5 6
e 6 1
";
    let g = Graph::parse(text).unwrap();
    let mut rng = RngStream::from_seed(3);
    let mut search = WeightedSearch::new(&g, DualSolution::zeros(g.m())).unwrap();
    let mut steps = 0u64;
    while !search.is_target() {
        search.step(&g, Algo::Rls, &mut rng);
        steps += 1;
    }
    let s = search.solution();
    assert!(dual_maximal(s, &g).unwrap());
    let cover = induced_cover(s, &g).unwrap();
    let opt = exact_min_vc(&g).unwrap();
    println!("dual {s} (value {}) after {steps} evaluations", s.total());
    println!("cover {cover:?} weight {} / optimum {} {:?}", cover_weight(&cover, &g), opt.weight, opt.cover);
}
