use std::f64::consts::FRAC_1_SQRT_2;

use super::{Engine, GatePath, LocalGate, SimError};
use crate::dd::{Edge, NodeId};
use crate::pauli::{eighth_root, CliffordCircuit, CliffordGate, PauliOp, Scalar};

/// A 2×2 matrix, `m[row][col]`.
pub type M2 = [[Scalar; 2]; 2];

/// Gates on diagram levels: qubit `n` is the top of an `n`-qubit state.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X(u32),
    Y(u32),
    Z(u32),
    H(u32),
    S(u32),
    Sdg(u32),
    T(u32),
    Tdg(u32),
    Cx { control: u32, target: u32 },
    Cz(u32, u32),
    /// Multi-controlled X; a control `(q, false)` fires on `|0⟩`.
    Mcx { controls: Vec<(u32, bool)>, target: u32 },
    /// `2^k × 2^k` matrix; `qubits[0]` is the most significant row/column bit.
    Dense { qubits: Vec<u32>, matrix: Vec<Vec<Scalar>> },
}

impl Gate {
    pub fn qubits(&self) -> Vec<u32> {
        match self {
            Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) => {
                vec![*q]
            }
            Gate::Cx { control, target } => vec![*control, *target],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::Mcx { controls, target } => {
                let mut v: Vec<u32> = controls.iter().map(|c| c.0).collect();
                v.push(*target);
                v
            }
            Gate::Dense { qubits, .. } => qubits.clone(),
        }
    }

    fn check(&self, n: u32) -> Result<(), SimError> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q < 1 || q > n {
                return Err(SimError::QubitRange { qubit: q, n });
            }
            if qs[..i].contains(&q) {
                return Err(SimError::Unsupported(format!("qubit {q} used twice in one gate")));
            }
        }
        if let Gate::Dense { qubits, matrix } = self {
            let d = 1usize << qubits.len();
            if qubits.len() > 3 || matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
                return Err(SimError::Unsupported(format!("dense gate on {} qubits needs a {d}×{d} matrix, at most 3 qubits", qubits.len())));
            }
        }
        Ok(())
    }
}

fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

fn zero2() -> M2 {
    [[c(0.0, 0.0); 2]; 2]
}

pub(crate) fn ident() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

fn proj(b: bool) -> M2 {
    let mut m = zero2();
    m[b as usize][b as usize] = c(1.0, 0.0);
    m
}

fn single_matrix(g: &Gate) -> Option<M2> {
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

impl LocalGate {
    fn top(&self) -> u32 {
        match *self {
            LocalGate::S(k) | LocalGate::H(k) => k,
            LocalGate::Down { c, .. } => c,
            LocalGate::Up { t, .. } => t,
        }
    }

    fn circuit(&self) -> CliffordCircuit {
        let gates = match *self {
            LocalGate::S(k) => vec![CliffordGate::S(k)],
            LocalGate::H(k) => vec![CliffordGate::H(k)],
            LocalGate::Down { c, t, op } => {
                let cx = CliffordGate::Cnot { control: c, target: t };
                match PauliOp::from_bits(op & 1 == 1, op & 2 == 2) {
                    PauliOp::Z => vec![CliffordGate::H(t), cx, CliffordGate::H(t)],
                    PauliOp::Y => {
                        let s = CliffordGate::S(t);
                        vec![s, s, s, cx, s]
                    }
                    _ => vec![cx],
                }
            }
            LocalGate::Up { c, t } => vec![CliffordGate::Cnot { control: c, target: t }],
        };
        CliffordCircuit { gates }
    }
}

fn op_code(op: PauliOp) -> u8 {
    let (x, z) = op.bits();
    x as u8 | (z as u8) << 1
}

impl Engine {
    /// Apply one gate to the state `e`.
    pub fn apply(&mut self, e: &Edge, g: &Gate) -> Result<Edge, SimError> {
        let n = e.index();
        g.check(n)?;
        self.stats.gates += 1;
        if e.is_zero() {
            return Ok(*e);
        }
        if self.gate_path == GatePath::Generic || matches!(g, Gate::Dense { .. }) {
            let u = self.gate_to_dd(g, n)?;
            return self.apply_gate(&u, e);
        }
        Ok(match *g {
            Gate::X(q) => self.apply_pauli(e, q, PauliOp::X),
            Gate::Y(q) => self.apply_pauli(e, q, PauliOp::Y),
            Gate::Z(q) => self.apply_pauli(e, q, PauliOp::Z),
            Gate::H(q) => self.apply_hadamard(e, q),
            Gate::S(q) => self.apply_phase_s(e, q),
            Gate::Sdg(q) => {
                let s = self.apply_phase_s(e, q);
                s.with_pauli(q, PauliOp::Z)
            }
            Gate::T(q) => self.apply_phase(e, q, eighth_root(1)),
            Gate::Tdg(q) => self.apply_phase(e, q, eighth_root(-1)),
            Gate::Cx { control, target } => {
                if control > target {
                    self.apply_downward_cpauli(e, control, target, PauliOp::X)?
                } else {
                    self.apply_upward_cnot(e, control, target)?
                }
            }
            Gate::Cz(a, b) => self.apply_downward_cpauli(e, a.max(b), a.min(b), PauliOp::Z)?,
            Gate::Mcx { ref controls, target } => self.apply_mcx(e, controls, target),
            Gate::Dense { .. } => unreachable!(),
        })
    }

    /// `P_q |e⟩` for a single-qubit Pauli: only the root label changes.
    pub fn apply_pauli(&mut self, e: &Edge, q: u32, op: PauliOp) -> Edge {
        if self.mode() == crate::dd::Mode::Qmdd {
            let g = match op {
                PauliOp::X => Gate::X(q),
                PauliOp::Y => Gate::Y(q),
                PauliOp::Z => Gate::Z(q),
                PauliOp::I => return *e,
            };
            let u = self.gate_to_dd(&g, e.index()).expect("valid gate");
            return self.apply_rec_pub(&u, e);
        }
        e.with_pauli(q, op)
    }

    /// `p |e⟩` for a whole Pauli LIM; one gate per factor in QMDD mode.
    pub fn apply_pauli_string(&mut self, e: &Edge, p: &crate::pauli::PauliLim) -> Edge {
        if self.mode() == crate::dd::Mode::Limdd {
            return e.premul(p);
        }
        let mut r = e.scaled(p.scalar());
        for q in 1..=p.n() {
            r = self.apply_pauli(&r, q, p.string().get(q));
        }
        r
    }

    pub fn apply_phase_s(&mut self, e: &Edge, q: u32) -> Edge {
        self.local(e, LocalGate::S(q))
    }

    pub fn apply_hadamard(&mut self, e: &Edge, q: u32) -> Edge {
        self.local(e, LocalGate::H(q))
    }

    /// Controlled `op` with the control above the target.
    pub fn apply_downward_cpauli(&mut self, e: &Edge, control: u32, target: u32, op: PauliOp) -> Result<Edge, SimError> {
        if control <= target {
            return Err(SimError::Orientation { control, target });
        }
        if op == PauliOp::I {
            return Ok(*e);
        }
        Ok(self.local(e, LocalGate::Down { c: control, t: target, op: op_code(op) }))
    }

    /// CNOT with the control below the target.
    pub fn apply_upward_cnot(&mut self, e: &Edge, control: u32, target: u32) -> Result<Edge, SimError> {
        if control >= target {
            return Err(SimError::Orientation { control: target, target: control });
        }
        Ok(self.local(e, LocalGate::Up { c: control, t: target }))
    }

    /// `diag(1, phase)` on the top qubit: the phase goes onto the high edge.
    pub fn apply_phase_top(&mut self, e: &Edge, phase: Scalar) -> Edge {
        let l = match e.lim() {
            None => return *e,
            Some(l) => *l,
        };
        let n = e.index();
        let (top, _) = l.split_top();
        // diag(1,φ)·P = P·diag(1,φ) for diagonal P; for X or Y it is φ·P·diag(1,φ̄).
        let (pre, ph) = if top.is_diagonal() { (c(1.0, 0.0), phase) } else { (phase, phase.conj()) };
        let node = *self.store().node(e.target);
        let r = self.store_mut().join(&node.low_edge(), &node.high_edge().scaled(ph));
        debug_assert_eq!(r.index(), n);
        r.premul(&l).scaled(pre)
    }

    /// `diag(1, phase)` on qubit `q`.
    pub fn apply_phase(&mut self, e: &Edge, q: u32, phase: Scalar) -> Edge {
        if e.is_zero() {
            return *e;
        }
        if q == e.index() {
            return self.apply_phase_top(e, phase);
        }
        let alpha = (c(1.0, 0.0) + phase) / 2.0;
        let beta = (c(1.0, 0.0) - phase) / 2.0;
        let a = e.scaled(alpha);
        let b = e.with_pauli(q, PauliOp::Z).scaled(beta);
        self.add_rec(&a, &b)
    }

    /// `e + Π (X_t − I) e` where `Π` projects onto the control pattern.
    pub fn apply_mcx(&mut self, e: &Edge, controls: &[(u32, bool)], target: u32) -> Edge {
        let mut p = *e;
        for &(q, pol) in controls {
            p = self.project_rec(&p, q, pol);
            if p.is_zero() {
                return *e;
            }
        }
        let flipped = p.with_pauli(target, PauliOp::X);
        let d = self.add_rec(&flipped, &p.scaled(c(-1.0, 0.0)));
        self.add_rec(e, &d)
    }

    fn local(&mut self, e: &Edge, g: LocalGate) -> Edge {
        let l = match e.lim() {
            None => return *e,
            Some(l) => *l,
        };
        let conj = g.circuit().conjugate_unchecked(&l);
        let r = self.local_node(e.target, g);
        r.premul(&conj)
    }

    fn local_node(&mut self, v: NodeId, g: LocalGate) -> Edge {
        if self.caches_enabled {
            if let Some(r) = self.caches.local.get(&(v, g)) {
                return *r;
            }
        }
        let node = *self.store().node(v);
        let m = node.index;
        let (lo, hi) = (node.low_edge(), node.high_edge());
        let r = if m > g.top() {
            let a = self.local(&lo, g);
            let b = self.local(&hi, g);
            self.store_mut().join(&a, &b)
        } else {
            match g {
                LocalGate::S(_) => self.store_mut().join(&lo, &hi.scaled(c(0.0, 1.0))),
                LocalGate::H(_) => {
                    let s = self.add_rec(&lo, &hi);
                    let d = self.add_rec(&lo, &hi.scaled(c(-1.0, 0.0)));
                    self.store_mut().join(&s, &d).scaled(c(FRAC_1_SQRT_2, 0.0))
                }
                LocalGate::Down { t, op, .. } => {
                    let p = PauliOp::from_bits(op & 1 == 1, op & 2 == 2);
                    self.store_mut().join(&lo, &hi.with_pauli(t, p))
                }
                LocalGate::Up { c: ctl, .. } => {
                    let full = Edge::new(crate::pauli::PauliLim::identity(m), v);
                    let p0 = self.project_rec(&full, ctl, false);
                    let p1 = self.project_rec(&full, ctl, true);
                    self.add_rec(&p0, &p1.with_pauli(m, PauliOp::X))
                }
            }
        };
        if self.caches_enabled {
            self.caches.local.insert((v, g), r);
        }
        r
    }

    /// Gate diagram of `g` on an `n`-qubit register, row and column levels interleaved.
    pub fn gate_to_dd(&mut self, g: &Gate, n: u32) -> Result<Edge, SimError> {
        g.check(n)?;
        let x = single_matrix(&Gate::X(0)).unwrap();
        let z = single_matrix(&Gate::Z(0)).unwrap();
        Ok(match g {
            Gate::Cx { control, target } => {
                let a = self.product_operator(n, &[(*control, proj(false))]);
                let b = self.product_operator(n, &[(*control, proj(true)), (*target, x)]);
                self.add_rec(&a, &b)
            }
            Gate::Cz(p, q) => {
                let a = self.product_operator(n, &[(*p, proj(false))]);
                let b = self.product_operator(n, &[(*p, proj(true)), (*q, z)]);
                self.add_rec(&a, &b)
            }
            Gate::Mcx { controls, target } => {
                let id = self.product_operator(n, &[]);
                let mut ops: Vec<(u32, M2)> = controls.iter().map(|&(q, b)| (q, proj(b))).collect();
                let mut xm = x;
                xm[0][0] = c(-1.0, 0.0);
                xm[1][1] = c(-1.0, 0.0);
                ops.push((*target, xm));
                let d = self.product_operator(n, &ops);
                self.add_rec(&id, &d)
            }
            Gate::Dense { qubits, matrix } => {
                let k = qubits.len();
                let mut acc = Edge::zero(2 * n);
                for (r, row) in matrix.iter().enumerate() {
                    for (col, &a) in row.iter().enumerate() {
                        if a == c(0.0, 0.0) {
                            continue;
                        }
                        let ops: Vec<(u32, M2)> = qubits
                            .iter()
                            .enumerate()
                            .map(|(j, &q)| {
                                let shift = k - 1 - j;
                                let mut m = zero2();
                                m[(r >> shift) & 1][(col >> shift) & 1] = c(1.0, 0.0);
                                (q, m)
                            })
                            .collect();
                        let term = self.product_operator(n, &ops).scaled(a);
                        acc = self.add_rec(&acc, &term);
                    }
                }
                acc
            }
            single => {
                let m = single_matrix(single).expect("single-qubit gate");
                self.product_operator(n, &[(single.qubits()[0], m)])
            }
        })
    }

    /// `⊗_q M_q`, identity on qubits not listed.
    pub fn product_operator(&mut self, n: u32, ops: &[(u32, M2)]) -> Edge {
        let mut e = Edge::scalar(c(1.0, 0.0));
        for q in 1..=n {
            let m = ops.iter().find(|o| o.0 == q).map_or(ident(), |o| o.1);
            let mut rows = [Edge::zero(2 * q - 1); 2];
            for (r, row) in rows.iter_mut().enumerate() {
                let a = e.scaled(m[r][0]);
                let b = e.scaled(m[r][1]);
                *row = self.store_mut().join(&a, &b);
            }
            e = self.store_mut().join(&rows[0], &rows[1]);
        }
        e
    }

    fn apply_rec_pub(&mut self, u: &Edge, e: &Edge) -> Edge {
        self.apply_gate(u, e).expect("dimensions match")
    }
}
