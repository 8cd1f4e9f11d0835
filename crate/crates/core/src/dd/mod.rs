//! Reduced Pauli-LIMDDs: node store, canonical edge construction and
//! the stabilizer machinery that picks canonical labels.

mod export;
mod semantics;
mod store;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pauli::{PauliError, PauliLim, PauliOp, Scalar};

pub use export::{LevelStats, StoreStats};
pub use semantics::{parse_bits, DENSE_LIMIT};
pub use store::{Mode, Store};

/// Handle of a node in a [`Store`]. Id 0 is the leaf.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub const LEAF: NodeId = NodeId(0);

    pub fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Edge label: the zero map or a Pauli LIM.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Lim {
    Zero(u32),
    Pauli(PauliLim),
}

impl Lim {
    pub fn n(&self) -> u32 {
        match self {
            Lim::Zero(n) => *n,
            Lim::Pauli(p) => p.n(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Lim::Zero(_))
    }

    pub fn pauli(&self) -> Option<&PauliLim> {
        match self {
            Lim::Zero(_) => None,
            Lim::Pauli(p) => Some(p),
        }
    }
}

impl fmt::Display for Lim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lim::Zero(_) => write!(f, "0"),
            Lim::Pauli(p) => write!(f, "{p}"),
        }
    }
}

/// `label · |target⟩`, or the zero vector.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub label: Lim,
    pub target: NodeId,
}

impl Edge {
    pub fn new(label: PauliLim, target: NodeId) -> Self {
        Self { label: Lim::Pauli(label), target }
    }

    pub fn zero(n: u32) -> Self {
        Self { label: Lim::Zero(n), target: NodeId::LEAF }
    }

    /// The scalar `c` on the leaf; zero gives the zero edge.
    pub fn scalar(c: Scalar) -> Self {
        if c == Scalar::new(0.0, 0.0) {
            Self::zero(0)
        } else {
            Self::new(PauliLim::scalar_identity(0, c), NodeId::LEAF)
        }
    }

    pub fn index(&self) -> u32 {
        self.label.n()
    }

    pub fn is_zero(&self) -> bool {
        self.label.is_zero()
    }

    pub fn lim(&self) -> Option<&PauliLim> {
        self.label.pauli()
    }

    /// `c · |self⟩`.
    pub fn scaled(&self, c: Scalar) -> Edge {
        match self.label {
            Lim::Zero(_) => *self,
            Lim::Pauli(p) => {
                if c == Scalar::new(0.0, 0.0) {
                    Edge::zero(p.n())
                } else {
                    Edge::new(p.scaled(c), self.target)
                }
            }
        }
    }

    /// `a · |self⟩` for a LIM on the same qubits.
    pub fn premul(&self, a: &PauliLim) -> Edge {
        match self.label {
            Lim::Zero(_) => *self,
            Lim::Pauli(p) => Edge::new(a * &p, self.target),
        }
    }

    /// Apply single-qubit Pauli `op` to qubit `q`.
    pub fn with_pauli(&self, q: u32, op: PauliOp) -> Edge {
        self.premul(&PauliLim::single(self.index(), q, op))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.label, self.target)
    }
}

/// A node `|0⟩|low⟩ + |1⟩ high_label |high⟩` on level `index`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub index: u32,
    pub low: NodeId,
    /// Only QMDD-mode nodes may have a zero low edge.
    pub low_zero: bool,
    pub high_label: Lim,
    pub high: NodeId,
}

impl Node {
    pub fn low_edge(&self) -> Edge {
        if self.low_zero {
            Edge::zero(self.index - 1)
        } else {
            Edge::new(PauliLim::identity(self.index - 1), self.low)
        }
    }

    pub fn high_edge(&self) -> Edge {
        Edge { label: self.high_label, target: self.high }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DdError {
    #[error("both children are zero; the zero vector has no node")]
    BothZero,
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },
    #[error("cannot follow below the leaf")]
    FollowLeaf,
    #[error("zero label has no canonical root label")]
    ZeroLabel,
    #[error("{n} qubits exceeds the dense limit of {limit}")]
    DenseLimit { n: u32, limit: u32 },
    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("expected {expected} bits, got {got}")]
    BitLength { expected: u32, got: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}
