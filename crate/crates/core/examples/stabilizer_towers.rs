//! Random Clifford circuits keep the diagram a tower: one node per qubit,
//! high edges labelled by a Pauli string times a unit scalar.

use limdd::dd::Lim;
use limdd::sim::{Engine, Gate};
use limdd::states::{graph_state, stabilizer_state, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut eng = Engine::limdd();
    let n = 6;
    let gates: Vec<Gate> = (0..40)
        .map(|_| {
            let q = rng.gen_range(1..=n);
            match rng.gen_range(0..3) {
                0 => Gate::H(q),
                1 => Gate::S(q),
                _ => Gate::Cx { control: q, target: q % n + 1 },
            }
        })
        .collect();
    let e = stabilizer_state(&mut eng, n, &gates).expect("Clifford gates");
    println!("random Clifford state on {n} qubits: {} nodes", eng.store().node_count(&e));
    let mut v = e.target;
    while eng.store().index_of(v) > 0 {
        let node = eng.store().node(v);
        let high = match node.high_label {
            Lim::Zero(_) => "0".to_string(),
            Lim::Pauli(p) => p.to_string(),
        };
        println!("  level {}: high label {high}", node.index);
        v = node.low;
    }
    println!("stabilizers: {}", eng.store().get_stabilizer_gen_set(e.target));

    let ring = Graph::new(5, (0..5).map(|v| (v, (v + 1) % 5)).collect()).expect("valid graph");
    let g = graph_state(&mut eng, &ring);
    println!("5-ring graph state: {} nodes, stabilizers {}", eng.store().node_count(&g), eng.store().get_stabilizer_gen_set(g.target));
}
