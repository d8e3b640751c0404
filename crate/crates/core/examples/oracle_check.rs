//! Ground truth on a small instance: exact cover, maximum dual and the gap
//! measures G and G* for a few dual solutions.

use dynvc::oracles::{dual_maximal, exact_min_vc, gap_g, gap_g_star, max_dual_value};
use dynvc::solution_io::{parse_solution, verify};
use dynvc::weighted::DualSolution;
use dynvc::Graph;

fn main() {
    let g = Graph::parse("graph 4 6\nvw 2 3\nvw 3 2\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n").unwrap();
    let opt = exact_min_vc(&g).unwrap();
    println!("OPT {} with cover {:?}; maximum dual value {}", opt.weight, opt.cover, max_dual_value(&g).unwrap());

    for w in [vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 2, 0, 0], vec![1, 1, 1, 0]] {
        let s = DualSolution::from_weights(w);
        println!(
            "s = [{s}]  maximal {}  G {}  G* {}",
            dual_maximal(&s, &g).unwrap(),
            gap_g(&s, &g).unwrap(),
            gap_g_star(&s, &g).unwrap()
        );
    }

    let sol = parse_solution("sol classic 1010").unwrap();
    println!("\n{}", verify(&g, &sol).unwrap());
}
