//! Node counts of k×k cluster states: one node per qubit with Pauli labels,
//! against a plain QMDD whose width grows with the grid.

use limdd::sim::Engine;
use limdd::states::cluster_state;

fn main() {
    println!("{:>3} {:>7} {:>7}", "k", "LIMDD", "QMDD");
    for k in 2..=6 {
        let mut lim = Engine::limdd();
        let mut qmdd = Engine::qmdd();
        let a = cluster_state(&mut lim, k, k);
        let b = cluster_state(&mut qmdd, k, k);
        println!("{k:>3} {:>7} {:>7}", lim.store().node_count(&a), qmdd.store().node_count(&b));
    }
}
