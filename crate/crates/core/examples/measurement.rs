//! Single-qubit probabilities, post-measurement states and sampling.

use limdd::sim::{Engine, Gate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bits(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

fn main() {
    let mut eng = Engine::limdd();
    let n = 4;
    let mut e = eng.zero_state(n);
    // GHZ on the top three qubits, then a T-rotated Hadamard on the last
    for g in [
        Gate::H(4),
        Gate::Cx { control: 4, target: 3 },
        Gate::Cx { control: 3, target: 2 },
        Gate::H(1),
        Gate::T(1),
        Gate::H(1),
    ] {
        e = eng.apply(&e, &g).expect("valid gate");
    }
    for level in (1..=n).rev() {
        let p1 = eng.measurement_probability(&e, level, true).expect("level in range");
        println!("qubit {}: p(1) = {p1:.4}", n - level);
    }
    let post = eng.update_post_meas(&e, 4, true).expect("outcome has weight");
    println!("after measuring qubit 0 = 1: p(qubit 1 = 1) = {:.4}", eng.measurement_probability(&post, 3, true).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..2000 {
        *counts.entry(bits(&eng.sample(&e, &mut rng).unwrap())).or_insert(0) += 1;
    }
    for (s, c) in counts {
        println!("{s}: {c:>5}  (exact {:.4})", eng.prob_of_string(&e, &s.chars().map(|c| c == '1').collect::<Vec<_>>()).unwrap());
    }
}
