use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::GeneratorSet;
use super::lim::{PauliLim, Scalar};
use super::string::{PauliOp, PauliString};
use super::PauliError;

/// Elementary conjugation gates; qubits are 1-based with qubit `n` on top.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CliffordGate {
    H(u32),
    S(u32),
    Cnot { control: u32, target: u32 },
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGate::H(q) => write!(f, "H({q})"),
            CliffordGate::S(q) => write!(f, "S({q})"),
            CliffordGate::Cnot { control, target } => write!(f, "CNOT({control},{target})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCircuit {
    pub gates: Vec<CliffordGate>,
}

fn local_h(op: PauliOp) -> (PauliOp, bool) {
    match op {
        PauliOp::I => (PauliOp::I, false),
        PauliOp::X => (PauliOp::Z, false),
        PauliOp::Z => (PauliOp::X, false),
        PauliOp::Y => (PauliOp::Y, true),
    }
}

fn local_s(op: PauliOp) -> (PauliOp, bool) {
    match op {
        PauliOp::I => (PauliOp::I, false),
        PauliOp::X => (PauliOp::Y, false),
        PauliOp::Y => (PauliOp::X, true),
        PauliOp::Z => (PauliOp::Z, false),
    }
}

/// Images under CNOT of `P ⊗ I` and `I ⊗ P` (control on the left).
fn cnot_control_image(op: PauliOp) -> (PauliOp, PauliOp) {
    match op {
        PauliOp::I => (PauliOp::I, PauliOp::I),
        PauliOp::X => (PauliOp::X, PauliOp::X),
        PauliOp::Y => (PauliOp::Y, PauliOp::X),
        PauliOp::Z => (PauliOp::Z, PauliOp::I),
    }
}

fn cnot_target_image(op: PauliOp) -> (PauliOp, PauliOp) {
    match op {
        PauliOp::I => (PauliOp::I, PauliOp::I),
        PauliOp::X => (PauliOp::I, PauliOp::X),
        PauliOp::Y => (PauliOp::Z, PauliOp::Y),
        PauliOp::Z => (PauliOp::Z, PauliOp::Z),
    }
}

impl CliffordGate {
    fn qubits(&self) -> (u32, u32) {
        match *self {
            CliffordGate::H(q) | CliffordGate::S(q) => (q, q),
            CliffordGate::Cnot { control, target } => (control, target),
        }
    }

    /// `G a G†`.
    pub fn conjugate(&self, a: &PauliLim) -> PauliLim {
        let mut s = *a.string();
        let mut scalar = a.scalar();
        match *self {
            CliffordGate::H(q) | CliffordGate::S(q) => {
                let f = if matches!(self, CliffordGate::H(_)) { local_h } else { local_s };
                let (op, neg) = f(s.get(q));
                s.set(q, op);
                if neg {
                    scalar = -scalar;
                }
            }
            CliffordGate::Cnot { control, target } => {
                let (c1, t1) = cnot_control_image(s.get(control));
                let (c2, t2) = cnot_target_image(s.get(target));
                let a = PauliLim::from_string(PauliString::from_ops(&[c1, t1]));
                let b = PauliLim::from_string(PauliString::from_ops(&[c2, t2]));
                let prod = a * b;
                s.set(control, prod.string().get(2));
                s.set(target, prod.string().get(1));
                scalar *= prod.scalar();
            }
        }
        PauliLim::new(scalar, s)
    }
}

impl CliffordCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: CliffordGate) {
        self.gates.push(g);
    }

    /// Formal inverse: reversed order, with `S† = S³`.
    pub fn inverse(&self) -> CliffordCircuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in self.gates.iter().rev() {
            match g {
                CliffordGate::S(_) => gates.extend([*g, *g, *g]),
                _ => gates.push(*g),
            }
        }
        CliffordCircuit { gates }
    }

    /// `U a U†` where the first gate of the list acts first.
    pub fn conjugate(&self, a: &PauliLim) -> Result<PauliLim, PauliError> {
        let n = a.n();
        for g in &self.gates {
            let (p, q) = g.qubits();
            if p < 1 || p > n || q < 1 || q > n || p == q && matches!(g, CliffordGate::Cnot { .. }) {
                return Err(PauliError::IndexOutOfRange { qubit: p.max(q), n });
            }
        }
        Ok(self.conjugate_unchecked(a))
    }

    pub(crate) fn conjugate_unchecked(&self, a: &PauliLim) -> PauliLim {
        self.gates.iter().fold(*a, |acc, g| g.conjugate(&acc))
    }

    pub fn conjugate_set(&self, g: &GeneratorSet) -> Result<GeneratorSet, PauliError> {
        let gens = g.iter().map(|a| self.conjugate(a)).collect::<Result<Vec<_>, _>>()?;
        GeneratorSet::new(g.n(), gens)
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

struct Sweep {
    circuit: CliffordCircuit,
    images: Vec<PauliLim>,
}

impl Sweep {
    fn apply(&mut self, g: CliffordGate) {
        for im in self.images.iter_mut() {
            *im = g.conjugate(im);
        }
        self.circuit.push(g);
    }
}

/// Find a Clifford `U` with `U g_j U† = +Z_j` for the `j`-th generator.
pub fn clifford_to_z_form(g: &GeneratorSet) -> Result<(CliffordCircuit, GeneratorSet), PauliError> {
    let n = g.n();
    if g.rref()?.len() != g.len() {
        return Err(PauliError::DependentGenerators);
    }
    let mut sw = Sweep { circuit: CliffordCircuit::new(), images: g.gens().to_vec() };
    let mut used: Vec<u32> = Vec::new();
    let mut used_mask = 0u128;
    for j in 0..g.len() {
        let cur = sw.images[j];
        if cur.string().x_bits() & used_mask != 0 {
            return Err(PauliError::NotStabilizerGroup("generators do not commute".into()));
        }
        let free_x = cur.string().x_bits() & !used_mask;
        let q = if free_x != 0 {
            let q = free_x.trailing_zeros() + 1;
            if sw.images[j].string().get(q) == PauliOp::Y {
                sw.apply(CliffordGate::S(q));
            }
            let others = sw.images[j].string().x_bits() & !(1u128 << (q - 1));
            for r in bits(others) {
                sw.apply(CliffordGate::Cnot { control: q, target: r });
            }
            if sw.images[j].string().get(q) == PauliOp::Y {
                sw.apply(CliffordGate::S(q));
            }
            sw.apply(CliffordGate::H(q));
            q
        } else {
            let free_z = cur.string().z_bits() & !used_mask;
            if free_z == 0 {
                return Err(PauliError::DependentGenerators);
            }
            free_z.trailing_zeros() + 1
        };
        let others = sw.images[j].string().z_bits() & !(1u128 << (q - 1));
        for r in bits(others) {
            sw.apply(CliffordGate::Cnot { control: r, target: q });
        }
        if sw.images[j].scalar().re < 0.0 {
            for gate in [CliffordGate::H(q), CliffordGate::S(q), CliffordGate::S(q), CliffordGate::H(q)] {
                sw.apply(gate);
            }
        }
        debug_assert!(sw.images[j].approx_eq(&PauliLim::single(n, q, PauliOp::Z)));
        used.push(q);
        used_mask |= 1u128 << (q - 1);
    }
    for j in 0..used.len() {
        let want = j as u32 + 1;
        let have = used[j];
        if have != want {
            for gate in [
                CliffordGate::Cnot { control: have, target: want },
                CliffordGate::Cnot { control: want, target: have },
                CliffordGate::Cnot { control: have, target: want },
            ] {
                sw.apply(gate);
            }
            for u in used.iter_mut() {
                if *u == want {
                    *u = have;
                }
            }
            used[j] = want;
        }
    }
    let images = sw
        .images
        .iter()
        .map(|im| im.with_scalar(Scalar::new(im.scalar().re.signum(), 0.0)))
        .collect();
    Ok((sw.circuit, GeneratorSet::new(n, images)?))
}

/// 1-based positions of the set bits.
fn bits(mut m: u128) -> Vec<u32> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() + 1);
        m &= m - 1;
    }
    out
}
