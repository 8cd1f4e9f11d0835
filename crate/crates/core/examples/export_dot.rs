//! Write the diagram of a small state as Graphviz.
//!
//! Usage: `cargo run --example export_dot > ghz.dot && dot -Tsvg ghz.dot -o ghz.svg`

use limdd::sim::{Engine, Gate};

fn main() {
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(3);
    for g in [Gate::H(3), Gate::Cx { control: 3, target: 2 }, Gate::Cx { control: 2, target: 1 }, Gate::T(1)] {
        e = eng.apply(&e, &g).expect("valid gate");
    }
    print!("{}", eng.store().to_dot(&e));
}
