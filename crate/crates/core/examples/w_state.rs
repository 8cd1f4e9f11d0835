//! Build W states with the MCX-and-fan-out circuit and track diagram size.
//!
//! Usage: `cargo run --release --example w_state [max_n]`

use limdd::sim::Engine;
use limdd::states::w_state_circuit;

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let mut n = 4;
    while n <= max_n {
        let circ = w_state_circuit(n).expect("power of two");
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n as u32);
        let t = std::time::Instant::now();
        for g in circ.gates() {
            e = eng.apply(&e, &g).expect("valid gate");
            eng.track(&e);
        }
        let mut one_hot = vec![false; n];
        one_hot[n - 1] = true;
        let a = eng.amplitude(&e, &one_hot).expect("n bits");
        println!(
            "n={n:>3}: {} gates, peak {} nodes, final {} nodes, amplitude {:.6} (1/sqrt n = {:.6}), {:.1?}",
            circ.gate_count(),
            eng.stats.peak_nodes,
            eng.store().node_count(&e),
            a.re,
            1.0 / (n as f64).sqrt(),
            t.elapsed()
        );
        n *= 2;
    }
}
