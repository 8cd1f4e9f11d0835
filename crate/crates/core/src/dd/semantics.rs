use std::collections::HashMap;

use super::{DdError, Edge, Lim, NodeId, Store};
use crate::pauli::{PauliLim, PauliOp, Scalar};

/// Largest register converted to or from a dense vector.
pub const DENSE_LIMIT: u32 = 14;

/// `P = X^x · diag(z1, z2)` for the top operator of a label.
fn factor(op: PauliOp) -> (bool, Scalar, Scalar) {
    let one = Scalar::new(1.0, 0.0);
    match op {
        PauliOp::I => (false, one, one),
        PauliOp::Z => (false, one, -one),
        PauliOp::X => (true, one, one),
        PauliOp::Y => (true, Scalar::new(0.0, 1.0), Scalar::new(0.0, -1.0)),
    }
}

impl Store {
    /// The `b` branch of `|e⟩ = |0⟩|e_0⟩ + |1⟩|e_1⟩`.
    pub fn follow(&self, e: &Edge, b: bool) -> Result<Edge, DdError> {
        if e.index() == 0 {
            return Err(DdError::FollowLeaf);
        }
        Ok(self.follow_unchecked(e, b))
    }

    pub(crate) fn follow_unchecked(&self, e: &Edge, b: bool) -> Edge {
        let n = e.index();
        let l = match e.label {
            Lim::Zero(_) => return Edge::zero(n - 1),
            Lim::Pauli(l) => l,
        };
        let node = self.node(e.target);
        let (top, rest) = l.split_top();
        let (x, z1, z2) = factor(top);
        if x == b {
            if node.low_zero {
                Edge::zero(n - 1)
            } else {
                Edge::new(rest.scaled(z1), node.low)
            }
        } else {
            match node.high_label {
                Lim::Zero(_) => Edge::zero(n - 1),
                Lim::Pauli(h) => Edge::new(&rest.scaled(z2) * &h, node.high),
            }
        }
    }

    /// `⟨bits|e⟩`, with `bits[0]` the top qubit.
    pub fn amplitude(&self, e: &Edge, bits: &[bool]) -> Result<Scalar, DdError> {
        if bits.len() != e.index() as usize {
            return Err(DdError::BitLength { expected: e.index(), got: bits.len() });
        }
        let mut cur = *e;
        for &b in bits {
            cur = self.follow_unchecked(&cur, b);
            if cur.is_zero() {
                return Ok(Scalar::new(0.0, 0.0));
            }
        }
        Ok(cur.lim().map_or(Scalar::new(0.0, 0.0), |l| l.scalar()))
    }

    /// Amplitude of a bit string such as `"0110"` (leftmost = top qubit).
    pub fn amplitude_str(&self, e: &Edge, bits: &str) -> Result<Scalar, DdError> {
        let v = parse_bits(bits).ok_or(DdError::BitLength { expected: e.index(), got: bits.len() })?;
        self.amplitude(e, &v)
    }

    pub fn to_dense(&self, e: &Edge) -> Result<Vec<Scalar>, DdError> {
        self.to_dense_with_limit(e, DENSE_LIMIT)
    }

    /// State vector with the top qubit as the most significant index bit.
    pub fn to_dense_with_limit(&self, e: &Edge, limit: u32) -> Result<Vec<Scalar>, DdError> {
        let n = e.index();
        if n > limit {
            return Err(DdError::DenseLimit { n, limit });
        }
        let mut memo: HashMap<NodeId, Vec<Scalar>> = HashMap::new();
        Ok(self.dense_edge(e, &mut memo))
    }

    fn dense_edge(&self, e: &Edge, memo: &mut HashMap<NodeId, Vec<Scalar>>) -> Vec<Scalar> {
        let n = e.index();
        match e.label {
            Lim::Zero(_) => vec![Scalar::new(0.0, 0.0); 1 << n],
            Lim::Pauli(l) => {
                if !memo.contains_key(&e.target) {
                    let v = self.dense_node(e.target, memo);
                    memo.insert(e.target, v);
                }
                l.apply_dense(&memo[&e.target])
            }
        }
    }

    fn dense_node(&self, v: NodeId, memo: &mut HashMap<NodeId, Vec<Scalar>>) -> Vec<Scalar> {
        let node = *self.node(v);
        if node.index == 0 {
            return vec![Scalar::new(1.0, 0.0)];
        }
        let mut out = self.dense_edge(&node.low_edge(), memo);
        out.extend(self.dense_edge(&node.high_edge(), memo));
        out
    }

    /// Build a reduced diagram from a dense vector; entries below `1e-12` in
    /// magnitude count as zero.
    pub fn from_dense(&mut self, v: &[Scalar]) -> Result<Edge, DdError> {
        if !v.len().is_power_of_two() {
            return Err(DdError::NotPowerOfTwo(v.len()));
        }
        let n = v.len().trailing_zeros();
        if n > DENSE_LIMIT {
            return Err(DdError::DenseLimit { n, limit: DENSE_LIMIT });
        }
        Ok(self.from_dense_rec(v, n))
    }

    fn from_dense_rec(&mut self, v: &[Scalar], n: u32) -> Edge {
        if v.iter().all(|a| a.norm() < 1e-12) {
            return Edge::zero(n);
        }
        if n == 0 {
            return Edge::new(PauliLim::scalar_identity(0, v[0]), NodeId::LEAF);
        }
        let half = v.len() / 2;
        let e0 = self.from_dense_rec(&v[..half], n - 1);
        let e1 = self.from_dense_rec(&v[half..], n - 1);
        self.join(&e0, &e1)
    }

    /// The `|0…0⟩` state on `n` qubits.
    pub fn zero_state(&mut self, n: u32) -> Edge {
        self.basis_state(&vec![false; n as usize])
    }

    /// A computational basis state, `bits[0]` on top.
    pub fn basis_state(&mut self, bits: &[bool]) -> Edge {
        let mut e = Edge::scalar(Scalar::new(1.0, 0.0));
        for &b in bits.iter().rev() {
            let z = Edge::zero(e.index());
            e = if b { self.join(&z, &e) } else { self.join(&e, &z) };
        }
        e
    }
}

/// `"0110"` to bits; `None` on other characters.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}
