use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use limdd::circuit::{parse_circuit, run, Backend, CircuitError, RunConfig};
use limdd::stabrank::{search_with_restarts, AnnealConfig};

const BIT_NOTE: &str = "Bit strings: the leftmost character is qubit 0, the top of the diagram. \
In `qubits 3`, the string 100 means qubit 0 is |1⟩ and qubits 1 and 2 are |0⟩.";

#[derive(Parser)]
#[command(name = "limdd-sim", version, about = "Pauli-LIMDD quantum circuit simulator", after_help = BIT_NOTE)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate a circuit file.
    #[command(after_help = BIT_NOTE)]
    Run {
        file: PathBuf,
        #[arg(long, default_value = "limdd")]
        mode: Backend,
        /// Report the amplitude of this bit string (repeatable).
        #[arg(long = "amplitude", value_name = "BITS")]
        amplitudes: Vec<String>,
        #[arg(long, default_value_t = 0)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include operation counters.
        #[arg(long)]
        stats: bool,
        /// Also run this backend and report the largest amplitude difference.
        #[arg(long, value_name = "MODE2")]
        compare: Option<Backend>,
        /// Write the final diagram as Graphviz.
        #[arg(long, value_name = "OUT.dot")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Search for a stabilizer-rank decomposition of the Dicke state D(n, w).
    Stabrank {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        chi: usize,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run { file, mode, amplitudes, shots, seed, stats, compare, dot, json } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let circuit = match parse_circuit(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let cfg = RunConfig { mode, seed, shots, amplitudes, stats, compare, dot: dot.is_some() };
            let report = match run(&cfg, &circuit) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(if matches!(e, CircuitError::Parse { .. }) { 2 } else { 1 });
                }
            };
            if let (Some(path), Some(d)) = (&dot, &report.dot) {
                if let Err(e) = std::fs::write(path, d) {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            match &report.compare {
                Some(c) if !c.ok => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            }
        }
        Cmd::Stabrank { n, w, chi, restarts, seed, json } => {
            let cfg = AnnealConfig::new(n, w, chi, seed);
            let (res, runs) = match search_with_restarts(&cfg, restarts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            if json {
                let v = serde_json::json!({
                    "n": res.n, "w": res.w, "chi": res.chi, "success": res.success,
                    "residual": res.residual, "steps_used": res.steps_used,
                });
                println!("{v}");
            } else {
                println!("n={} w={} chi={} success={} residual={:e} steps_used={} runs={runs}", res.n, res.w, res.chi, res.success, res.residual, res.steps_used);
            }
            ExitCode::SUCCESS
        }
    }
}
