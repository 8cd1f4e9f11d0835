//! Simulate a circuit file on every backend and compare the results.
//!
//! Usage: `cargo run --example run_circuit [file]` (defaults to the Toffoli+T
//! circuit in `examples/circuits`).

use limdd::circuit::{parse_circuit, run, Backend, RunConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/circuits/toffoli_t.qc").to_string());
    let text = std::fs::read_to_string(&path).expect("readable circuit file");
    let circuit = match parse_circuit(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }
    };
    println!("{} qubits, {} gates", circuit.n, circuit.gate_count());
    let zeros = "0".repeat(circuit.n as usize);
    for mode in [Backend::Limdd, Backend::Qmdd] {
        let cfg = RunConfig {
            mode,
            shots: 8,
            seed: 3,
            amplitudes: vec![zeros.clone()],
            stats: true,
            compare: Some(Backend::Dense),
            ..Default::default()
        };
        let report = run(&cfg, &circuit).expect("simulation");
        println!("--- {mode}");
        print!("{}", report.to_text());
    }
}
