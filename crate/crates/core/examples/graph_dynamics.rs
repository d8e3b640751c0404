//! Edge insertions and deletions keep a solution vector aligned with the
//! graph: deletions swap the last edge into the hole, insertions start at 0.

use dynvc::dynamics::{apply_change, parse_script, Change};
use dynvc::weighted::DualSolution;
use dynvc::Graph;

fn main() {
    let mut g = Graph::from_edges(5, 8, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
    let mut s = DualSolution::from_weights(vec![1, 0, 2, 3]);
    println!("{}dual [{s}]\n", g.to_text());

    let removed = g.find_edge(2, 3).unwrap();
    apply_change(&mut g, &mut s, &Change::Remove(removed)).unwrap();
    println!("removed 2-3: edges {:?}, dual [{s}]", g.edges().iter().map(|e| e.to_string()).collect::<Vec<_>>());

    apply_change(&mut g, &mut s, &Change::Add(1, 5)).unwrap();
    println!("added 1-5: edges {:?}, dual [{s}]", g.edges().iter().map(|e| e.to_string()).collect::<Vec<_>>());

    // scripted changes, as read by `dynvc run --changes`
    let script = parse_script("at 10 add 2 4\nat 25 del 1 2\n").unwrap();
    for c in &script {
        let change = c.resolve(&g).unwrap();
        apply_change(&mut g, &mut s, &change).unwrap();
        println!("t={:>3} {change:?}: dual [{s}]", c.at);
    }
    assert!(Graph::from_edges(3, 1, &[(1, 2), (2, 3)]).is_err(), "edge bound is enforced");
}
