//! Gate application, addition, measurement and sampling on a [`Store`].

mod apply;
mod gates;
mod measure;

use std::collections::HashMap;

use serde::Serialize;

use crate::dd::{DdError, Edge, Mode, NodeId, Store};
use crate::pauli::Scalar;

pub use gates::{Gate, M2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("qubit {qubit} out of range 1..={n}")]
    QubitRange { qubit: u32, n: u32 },
    #[error("gate acts on {gate} qubits but the state has {state}")]
    Dimension { gate: u32, state: u32 },
    #[error("outcome has zero probability")]
    ZeroProbability,
    #[error("the zero vector is not a state")]
    ZeroState,
    #[error("controlled gate needs target below control (target {target}, control {control})")]
    Orientation { control: u32, target: u32 },
    #[error("unsupported gate: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Dd(#[from] DdError),
}

/// Counters collected while simulating.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub gates: u64,
    pub add_calls: u64,
    /// Add calls on level ≥ 1 that were not answered by the cache.
    pub add_computed: u64,
    pub add_cache_hits: u64,
    pub add_cache_misses: u64,
    pub apply_calls: u64,
    pub apply_cache_hits: u64,
    pub apply_cache_misses: u64,
    pub peak_nodes: usize,
    pub store_nodes: usize,
}

impl Stats {
    /// Flat `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let v = serde_json::to_value(self).expect("plain struct");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = v {
            for (k, v) in map {
                out.push_str(&format!("{k}={v}\n"));
            }
        }
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
enum LocalGate {
    S(u32),
    H(u32),
    /// Controlled Pauli with control above target.
    Down { c: u32, t: u32, op: u8 },
    /// CNOT with control below target.
    Up { c: u32, t: u32 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
struct ApplyKey {
    u: NodeId,
    ux: u128,
    uz: u128,
    uph: u32,
    v: NodeId,
    vx: u128,
    vz: u128,
    vph: u32,
}

#[derive(Default, Debug)]
struct Caches {
    add: HashMap<(NodeId, NodeId, u128, u128), Vec<(Scalar, Edge)>>,
    apply: HashMap<ApplyKey, Edge>,
    norm: HashMap<NodeId, f64>,
    proj_norm: HashMap<(NodeId, u32, bool), f64>,
    proj: HashMap<(NodeId, u32, bool), Edge>,
    local: HashMap<(NodeId, LocalGate), Edge>,
}

/// How gates reach the diagram.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub enum GatePath {
    /// Label updates, local recursion and projector sums.
    #[default]
    Specialized,
    /// Build the gate diagram and run the general matrix-vector product.
    Generic,
}

/// A diagram store together with its operation caches and counters.
#[derive(Debug)]
pub struct Engine {
    store: Store,
    caches: Caches,
    caches_enabled: bool,
    gate_path: GatePath,
    pub stats: Stats,
}

/// Relative size below which an added amplitude counts as cancelled.
pub const CANCEL_TOL: f64 = 1e-10;

impl Engine {
    pub fn new(mode: Mode) -> Self {
        let gate_path = match mode {
            Mode::Limdd => GatePath::Specialized,
            Mode::Qmdd => GatePath::Generic,
        };
        Self {
            store: Store::new(mode),
            caches: Caches::default(),
            caches_enabled: true,
            gate_path,
            stats: Stats::default(),
        }
    }

    pub fn limdd() -> Self {
        Self::new(Mode::Limdd)
    }

    pub fn qmdd() -> Self {
        Self::new(Mode::Qmdd)
    }

    pub fn mode(&self) -> Mode {
        self.store.mode()
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn store_mut(&mut self) -> &mut Store {
        &mut self.store
    }

    /// Turn the Add/Apply/recursion caches on or off; off also clears them.
    pub fn set_caches_enabled(&mut self, on: bool) {
        self.caches_enabled = on;
        if !on {
            self.clear_caches();
        }
    }

    pub fn caches_enabled(&self) -> bool {
        self.caches_enabled
    }

    /// The generic path is the only one available in QMDD mode.
    pub fn set_gate_path(&mut self, path: GatePath) {
        self.gate_path = if self.mode() == Mode::Qmdd { GatePath::Generic } else { path };
    }

    pub fn gate_path(&self) -> GatePath {
        self.gate_path
    }

    pub fn clear_caches(&mut self) {
        self.caches = Caches::default();
    }

    pub fn reset_stats(&mut self) {
        self.stats = Stats::default();
    }

    pub fn zero_state(&mut self, n: u32) -> Edge {
        self.store.zero_state(n)
    }

    pub fn amplitude(&self, e: &Edge, bits: &[bool]) -> Result<Scalar, SimError> {
        Ok(self.store.amplitude(e, bits)?)
    }

    pub fn to_dense(&self, e: &Edge) -> Result<Vec<Scalar>, SimError> {
        Ok(self.store.to_dense(e)?)
    }

    /// Record the reachable size of `e` in the peak counter.
    pub fn track(&mut self, e: &Edge) -> usize {
        let k = self.store.node_count(e);
        self.stats.peak_nodes = self.stats.peak_nodes.max(k);
        self.stats.store_nodes = self.store.len();
        k
    }
}
