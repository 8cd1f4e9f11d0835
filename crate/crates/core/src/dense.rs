//! Plain state-vector reference simulator.
//!
//! Index bit `q - 1` holds qubit `q`, so the top qubit is the most
//! significant bit, as in [`crate::dd::Store::to_dense`].

use std::f64::consts::FRAC_1_SQRT_2;

use crate::pauli::{eighth_root, Scalar};
use crate::sim::Gate;

fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

pub fn zero_state(n: u32) -> Vec<Scalar> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    v
}

/// Apply `m` (rows/columns indexed with `qubits[0]` most significant).
pub fn apply_matrix(v: &mut [Scalar], qubits: &[u32], m: &[Vec<Scalar>]) {
    let k = qubits.len();
    let masks: Vec<usize> = qubits.iter().map(|&q| 1usize << (q - 1)).collect();
    let all: usize = masks.iter().sum();
    let sub = |base: usize, a: usize| -> usize {
        let mut j = base;
        for (i, m) in masks.iter().enumerate() {
            if (a >> (k - 1 - i)) & 1 == 1 {
                j |= m;
            }
        }
        j
    };
    let mut buf = vec![c(0.0, 0.0); 1 << k];
    for base in 0..v.len() {
        if base & all != 0 {
            continue;
        }
        for (a, slot) in buf.iter_mut().enumerate() {
            *slot = v[sub(base, a)];
        }
        for (r, row) in m.iter().enumerate() {
            v[sub(base, r)] = row.iter().zip(&buf).map(|(x, y)| x * y).sum();
        }
    }
}

fn single(g: &Gate) -> Option<[[Scalar; 2]; 2]> {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    let h = c(FRAC_1_SQRT_2, 0.0);
    Some(match g {
        Gate::X(_) => [[o, l], [l, o]],
        Gate::Y(_) => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        Gate::Z(_) => [[l, o], [o, -l]],
        Gate::H(_) => [[h, h], [h, -h]],
        Gate::S(_) => [[l, o], [o, c(0.0, 1.0)]],
        Gate::Sdg(_) => [[l, o], [o, c(0.0, -1.0)]],
        Gate::T(_) => [[l, o], [o, eighth_root(1)]],
        Gate::Tdg(_) => [[l, o], [o, eighth_root(-1)]],
        _ => return None,
    })
}

/// Apply a gate in place.
pub fn apply(v: &mut [Scalar], g: &Gate) {
    if let Some(m) = single(g) {
        let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.to_vec()).collect();
        apply_matrix(v, &g.qubits(), &rows);
        return;
    }
    match g {
        Gate::Cx { control, target } => {
            let (cm, tm) = (1usize << (control - 1), 1usize << (target - 1));
            for j in 0..v.len() {
                if j & cm != 0 && j & tm == 0 {
                    v.swap(j, j | tm);
                }
            }
        }
        Gate::Cz(a, b) => {
            let m = (1usize << (a - 1)) | (1usize << (b - 1));
            for (j, x) in v.iter_mut().enumerate() {
                if j & m == m {
                    *x = -*x;
                }
            }
        }
        Gate::Mcx { controls, target } => {
            let tm = 1usize << (target - 1);
            let fires = |j: usize| controls.iter().all(|&(q, pol)| ((j >> (q - 1)) & 1 == 1) == pol);
            for j in 0..v.len() {
                if j & tm == 0 && fires(j) {
                    v.swap(j, j | tm);
                }
            }
        }
        Gate::Dense { qubits, matrix } => apply_matrix(v, qubits, matrix),
        _ => unreachable!("single-qubit gates handled above"),
    }
}

/// Run `gates` from `|0…0⟩`.
pub fn simulate(n: u32, gates: &[Gate]) -> Vec<Scalar> {
    let mut v = zero_state(n);
    for g in gates {
        apply(&mut v, g);
    }
    v
}
