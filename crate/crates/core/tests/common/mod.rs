#![allow(dead_code)]

use std::collections::HashSet;

use limdd::pauli::{GeneratorSet, PauliLim, PauliOp, PauliString, Scalar};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

pub fn max_diff(a: &[Scalar], b: &[Scalar]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_state<R: Rng>(n: u32, rng: &mut R) -> Vec<Scalar> {
    let v: Vec<Scalar> = (0..1usize << n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

/// Every Pauli string on `n` qubits.
pub fn all_strings(n: u32) -> Vec<PauliString> {
    let mut out = Vec::new();
    for x in 0..1u128 << n {
        for z in 0..1u128 << n {
            out.push(PauliString::from_bits(n, x, z));
        }
    }
    out
}

/// All `±P` that fix `v`, found by direct matrix-vector products.
pub fn brute_stabilizers(n: u32, v: &[Scalar]) -> Vec<PauliLim> {
    let norm = v.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut out = Vec::new();
    for s in all_strings(n) {
        for sign in [1.0, -1.0] {
            let p = PauliLim::new(c(sign, 0.0), s);
            let w = p.apply_dense(v);
            if max_diff(&w, v) <= 1e-9 * norm {
                out.push(p);
            }
        }
    }
    out
}

/// Key of an exact group element for set comparisons.
pub fn key(p: &PauliLim) -> (u128, u128, i64, i64) {
    let s = p.scalar();
    (p.string().x_bits(), p.string().z_bits(), (s.re * 1e6).round() as i64, (s.im * 1e6).round() as i64)
}

/// Closure of the generators under exact multiplication.
pub fn enumerate_group(n: u32, gens: &[PauliLim]) -> Vec<PauliLim> {
    let mut elems = vec![PauliLim::identity(n)];
    let mut seen: HashSet<_> = elems.iter().map(key).collect();
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = elems[i] * *g;
            if seen.insert(key(&p)) {
                elems.push(p);
            }
        }
        i += 1;
        assert!(elems.len() <= 1 << 16, "group too large");
    }
    elems
}

pub fn group_keys(g: &GeneratorSet) -> HashSet<(u128, u128, i64, i64)> {
    enumerate_group(g.n(), g.gens()).iter().map(key).collect()
}

pub fn op_of(i: usize) -> PauliOp {
    PauliOp::ALL[i % 4]
}

/// A random gate on `n` qubits (`n ≥ 2` for the multi-qubit kinds).
pub fn random_gate<R: Rng>(n: u32, rng: &mut R) -> limdd::sim::Gate {
    use limdd::sim::Gate;
    let q = rng.gen_range(1..=n);
    let other = |rng: &mut R| loop {
        let p = rng.gen_range(1..=n);
        if p != q {
            return p;
        }
    };
    let kinds = if n >= 2 { 12 } else { 8 };
    match rng.gen_range(0..kinds) {
        0 => Gate::X(q),
        1 => Gate::Y(q),
        2 => Gate::Z(q),
        3 | 4 => Gate::H(q),
        5 => Gate::S(q),
        6 => Gate::T(q),
        7 => Gate::Sdg(q),
        8 | 9 => Gate::Cx { control: other(rng), target: q },
        10 => Gate::Cz(other(rng), q),
        _ => {
            let mut controls = Vec::new();
            for p in 1..=n {
                if p != q && rng.gen_bool(0.5) {
                    controls.push((p, rng.gen_bool(0.7)));
                }
            }
            Gate::Mcx { controls, target: q }
        }
    }
}

/// Random Clifford circuit on `n` qubits.
pub fn random_clifford<R: Rng>(n: u32, len: usize, rng: &mut R) -> limdd::pauli::CliffordCircuit {
    use limdd::pauli::{CliffordCircuit, CliffordGate};
    let mut c = CliffordCircuit::new();
    for _ in 0..len {
        let q = rng.gen_range(1..=n);
        match rng.gen_range(0..3) {
            0 => c.push(CliffordGate::H(q)),
            1 => c.push(CliffordGate::S(q)),
            _ if n > 1 => {
                let mut t = rng.gen_range(1..n);
                if t >= q {
                    t += 1;
                }
                c.push(CliffordGate::Cnot { control: q, target: t });
            }
            _ => c.push(CliffordGate::H(q)),
        }
    }
    c
}

/// A random stabilizer subgroup with `k` independent generators: signed
/// `Z_1..Z_k` pushed through a random Clifford circuit.
pub fn random_stab_group<R: Rng>(n: u32, k: u32, rng: &mut R) -> GeneratorSet {
    let circ = random_clifford(n, 4 * n as usize + 2, rng);
    let gens = (1..=k)
        .map(|q| {
            let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            circ.conjugate(&PauliLim::new(c(s, 0.0), PauliString::single(n, q, PauliOp::Z))).unwrap()
        })
        .collect();
    GeneratorSet::new(n, gens).unwrap()
}

/// Dense matrix of a Clifford circuit, columns `U|j⟩`.
pub fn dense_clifford(n: u32, circ: &limdd::pauli::CliffordCircuit) -> Vec<Vec<Scalar>> {
    use limdd::pauli::CliffordGate;
    use limdd::sim::Gate;
    let gates: Vec<Gate> = circ
        .gates
        .iter()
        .map(|g| match *g {
            CliffordGate::H(q) => Gate::H(q),
            CliffordGate::S(q) => Gate::S(q),
            CliffordGate::Cnot { control, target } => Gate::Cx { control, target },
        })
        .collect();
    (0..1usize << n)
        .map(|j| {
            let mut v = vec![c(0.0, 0.0); 1 << n];
            v[j] = c(1.0, 0.0);
            for g in &gates {
                limdd::dense::apply(&mut v, g);
            }
            v
        })
        .collect()
}

/// Columns of a Pauli LIM as a dense matrix.
pub fn dense_pauli(p: &PauliLim) -> Vec<Vec<Scalar>> {
    let n = p.n();
    (0..1usize << n)
        .map(|j| {
            let mut v = vec![c(0.0, 0.0); 1 << n];
            v[j] = c(1.0, 0.0);
            p.apply_dense(&v)
        })
        .collect()
}

/// `U P U†` from column lists (`U` unitary).
pub fn conjugate_dense(u: &[Vec<Scalar>], p: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let d = u.len();
    // M = U P U†, column j of M = U P (U† e_j); U†e_j has entries conj(U[k][j]) (U[k] is column k)
    (0..d)
        .map(|j| {
            let mut out = vec![c(0.0, 0.0); d];
            for k in 0..d {
                let w = u[k][j].conj();
                if w.norm() == 0.0 {
                    continue;
                }
                // U P e_k = Σ_m P[k][m] U e_m
                for (m, pk) in p[k].iter().enumerate() {
                    let f = w * pk;
                    if f.norm() == 0.0 {
                        continue;
                    }
                    for (o, x) in out.iter_mut().zip(&u[m]) {
                        *o += f * x;
                    }
                }
            }
            out
        })
        .collect()
}
