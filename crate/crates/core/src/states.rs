//! Constructors for structured states: graph and cluster states, coset
//! states, stabilizer states, the W-state circuit and dense Dicke vectors.
//!
//! Vertices, coset bit strings and circuit qubits use the user convention:
//! index 0 is the top qubit, written first in bit strings.

use crate::circuit::{Circuit, GateKind, Instr};
use crate::dd::Edge;
use crate::pauli::{PauliLim, PauliOp, PauliString, Scalar};
use crate::sim::{Engine, Gate, SimError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StateError {
    #[error("vertex {0} out of range")]
    Vertex(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("bit string has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("coset basis vectors are linearly dependent")]
    Dependent,
    #[error("{0} is not a power of two ≥ 2")]
    NotPowerOfTwo(usize),
    #[error("gate {0} is not Clifford")]
    NotClifford(String),
    #[error("Dicke state D({n},{w}) out of range")]
    Dicke { n: u32, w: u32 },
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// A simple undirected graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, StateError> {
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(StateError::Vertex(a.max(b)));
            }
            if a == b {
                return Err(StateError::SelfLoop(a));
            }
        }
        Ok(Self { n, edges })
    }

    /// `rows × cols` grid, vertices numbered row-major.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self { n: rows * cols, edges }
    }

    pub fn path(n: usize) -> Self {
        Self { n, edges: (1..n).map(|v| (v - 1, v)).collect() }
    }
}

fn level(n: usize, v: usize) -> u32 {
    (n - v) as u32
}

/// Graph state `2^{-n/2} Σ_x (−1)^{Σ_{ab∈E} x_a x_b} |x⟩`, built one level at a time:
/// each new node's high edge carries `Z` on the neighbors already below it.
pub fn graph_state(engine: &mut Engine, g: &Graph) -> Edge {
    let n = g.n;
    let mut e = Edge::scalar(Scalar::new(1.0, 0.0));
    for k in 1..=n as u32 {
        let v = n - k as usize;
        let mut z = PauliString::identity(k - 1);
        for &(a, b) in &g.edges {
            let other = if a == v { b } else if b == v { a } else { continue };
            let lv = level(n, other);
            if lv < k {
                let cur = z.get(lv);
                z.set(lv, if cur == PauliOp::Z { PauliOp::I } else { PauliOp::Z });
            }
        }
        let hi = engine.apply_pauli_string(&e, &PauliLim::from_string(z));
        e = engine.store_mut().join(&e, &hi);
    }
    e.scaled(Scalar::new(0.5f64.powf(n as f64 / 2.0), 0.0))
}

/// Cluster state on a `rows × cols` grid.
pub fn cluster_state(engine: &mut Engine, rows: usize, cols: usize) -> Edge {
    graph_state(engine, &Graph::grid(rows, cols))
}

/// Uniform superposition over `offset + span(basis)` in GF(2)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub n: usize,
    pub basis: Vec<Vec<bool>>,
    pub offset: Vec<bool>,
}

fn bits_to_u128(bits: &[bool]) -> u128 {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as u128)
}

impl Coset {
    pub fn new(n: usize, basis: Vec<Vec<bool>>, offset: Vec<bool>) -> Result<Self, StateError> {
        for b in basis.iter().chain(std::iter::once(&offset)) {
            if b.len() != n {
                return Err(StateError::Length { expected: n, got: b.len() });
            }
        }
        let c = Self { n, basis, offset };
        c.echelon()?;
        Ok(c)
    }

    /// Parse from `"0110"`-style strings.
    pub fn parse(basis: &[&str], offset: &str) -> Result<Self, StateError> {
        let p = |s: &str| s.chars().map(|c| c == '1').collect::<Vec<bool>>();
        Self::new(offset.len(), basis.iter().map(|s| p(s)).collect(), p(offset))
    }

    /// Basis with distinct leading (top-most) bits; index bit `j` is level `j + 1`.
    fn echelon(&self) -> Result<Vec<u128>, StateError> {
        let mut rows: Vec<u128> = Vec::new();
        for b in &self.basis {
            let mut v = bits_to_u128(b);
            for r in &rows {
                let lead = 127 - r.leading_zeros();
                if v >> lead & 1 == 1 {
                    v ^= r;
                }
            }
            if v == 0 {
                return Err(StateError::Dependent);
            }
            rows.push(v);
            rows.sort_by(|a, b| b.cmp(a));
        }
        Ok(rows)
    }

    /// All members, as integers whose bit `j` is level `j + 1`.
    pub fn members(&self) -> Vec<u128> {
        let rows = self.echelon().expect("validated");
        let off = bits_to_u128(&self.offset);
        (0..1u128 << rows.len())
            .map(|m| rows.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(off, |acc, (_, r)| acc ^ r))
            .collect()
    }
}

/// Coset state as an `X`-labelled tower, normalized.
pub fn coset_state(engine: &mut Engine, c: &Coset) -> Edge {
    let rows = c.echelon().expect("validated");
    let mut e = Edge::scalar(Scalar::new(1.0, 0.0));
    for k in 1..=c.n as u32 {
        let hi = match rows.iter().find(|r| 128 - r.leading_zeros() == k) {
            Some(r) => {
                let low = r & ((1u128 << (k - 1)) - 1);
                engine.apply_pauli_string(&e, &PauliLim::from_string(PauliString::from_bits(k - 1, low, 0)))
            }
            None => Edge::zero(k - 1),
        };
        e = engine.store_mut().join(&e, &hi);
    }
    let x = PauliString::from_bits(c.n as u32, bits_to_u128(&c.offset), 0);
    let norm = (rows.len() as f64 / 2.0).exp2();
    engine.apply_pauli_string(&e, &PauliLim::from_string(x)).scaled(Scalar::new(1.0 / norm, 0.0))
}

/// Run a Clifford circuit from `|0…0⟩` through the engine's fast paths.
pub fn stabilizer_state(engine: &mut Engine, n: u32, gates: &[Gate]) -> Result<Edge, StateError> {
    for g in gates {
        if matches!(g, Gate::T(_) | Gate::Tdg(_) | Gate::Mcx { .. } | Gate::Dense { .. }) {
            return Err(StateError::NotClifford(format!("{g:?}")));
        }
    }
    let mut e = engine.zero_state(n);
    for g in gates {
        e = engine.apply(&e, g)?;
    }
    Ok(e)
}

/// Circuit taking `|0…0⟩` to `W_n` for `n` a power of two.
///
/// Register A (the top `log n` qubits) is put in uniform superposition by
/// Hadamards. Values with a single set bit are already one-hot. Every other
/// value `k` gets its own qubit in register B, set by an MCX on the full
/// pattern of `k`, and then a CX fan-out from that qubit clears the ones of `k`.
pub fn w_state_circuit(n: usize) -> Result<Circuit, StateError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(StateError::NotPowerOfTwo(n));
    }
    let m = n.trailing_zeros() as usize;
    let mut ops = Vec::new();
    for a in 0..m {
        ops.push(Instr::gate(GateKind::H, &[a as u32]));
    }
    let others: Vec<usize> = (0..n).filter(|k| !k.is_power_of_two()).collect();
    for (i, &k) in others.iter().enumerate() {
        // bit j of k lives on register-A qubit j
        let controls: Vec<(u32, bool)> = (0..m).map(|j| (j as u32, k >> j & 1 == 1)).collect();
        ops.push(Instr::mcx(&controls, (m + i) as u32));
    }
    for (i, &k) in others.iter().enumerate() {
        for j in (0..m).filter(|j| k >> j & 1 == 1) {
            ops.push(Instr::gate(GateKind::Cx, &[(m + i) as u32, j as u32]));
        }
    }
    Ok(Circuit { n: n as u32, ops })
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `D(n, w)`: uniform over weight-`w` strings, normalized.
pub fn dicke_dense(n: u32, w: u32) -> Result<Vec<Scalar>, StateError> {
    if w > n || n > crate::dd::DENSE_LIMIT {
        return Err(StateError::Dicke { n, w });
    }
    let a = 1.0 / binom(n, w).sqrt();
    Ok((0..1usize << n)
        .map(|j| if j.count_ones() == w { Scalar::new(a, 0.0) } else { Scalar::new(0.0, 0.0) })
        .collect())
}
