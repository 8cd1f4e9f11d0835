//! Anneal for stabilizer-rank decompositions of small Dicke states.
//!
//! Usage: `cargo run --release --example stabilizer_rank [restarts]`

use limdd::stabrank::{search_with_restarts, AnnealConfig};

fn main() {
    let restarts: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    for (n, w, chi) in [(2, 1, 1), (3, 1, 2), (4, 1, 2), (4, 2, 2), (5, 2, 2), (6, 3, 2)] {
        let t = std::time::Instant::now();
        let (res, runs) = search_with_restarts(&AnnealConfig::new(n, w, chi, 1), restarts).expect("valid sizes");
        println!(
            "D({n},{w}) chi={chi}: success={} after {runs} run(s), {} steps, residual {:.2e}, {:.1?}",
            res.success,
            res.steps_used,
            res.residual,
            t.elapsed()
        );
    }
}
