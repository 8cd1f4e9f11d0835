use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{DdError, Edge, Lim, Node, NodeId};
use crate::pauli::{
    approx_eq, arg_lex_min_with, coset_meet_with, intersection_of, lex_min_from_reduced, opposite_of, GeneratorSet, LexMin, PairBasis, PauliLim, PauliOp, Scalar,
    EPS_ORD,
};

/// Label group of the diagram.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Mode {
    /// Scalars times Pauli strings.
    #[default]
    Limdd,
    /// Scalars times identity: plain QMDDs.
    Qmdd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
struct TableKey {
    low: NodeId,
    high: NodeId,
    low_zero: bool,
    high_zero: bool,
    x: u128,
    z: u128,
}

type PairData = Arc<(PairBasis, Option<PauliLim>)>;

/// Node storage with the unique table and stabilizer caches. Ids grow
/// monotonically and double as the node order.
#[derive(Debug)]
pub struct Store {
    mode: Mode,
    nodes: Vec<Node>,
    table: HashMap<TableKey, Vec<NodeId>>,
    stabs: Vec<Arc<GeneratorSet>>,
    root_bases: Vec<Option<Arc<PairBasis>>>,
    pairs: HashMap<(NodeId, NodeId), PairData>,
}

impl Default for Store {
    fn default() -> Self {
        Self::new(Mode::Limdd)
    }
}

impl Store {
    pub fn new(mode: Mode) -> Self {
        let leaf = Node {
            index: 0,
            low: NodeId::LEAF,
            low_zero: false,
            high_label: Lim::Zero(0),
            high: NodeId::LEAF,
        };
        Self {
            mode,
            nodes: vec![leaf],
            table: HashMap::new(),
            stabs: vec![Arc::new(GeneratorSet::empty(0))],
            root_bases: vec![None],
            pairs: HashMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn index_of(&self, id: NodeId) -> u32 {
        self.nodes[id.0 as usize].index
    }

    /// Number of nodes ever created, leaf included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub(crate) fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// `v ⪯ w` in the node order.
    pub fn precedes(&self, v: NodeId, w: NodeId) -> bool {
        v.0 <= w.0
    }

    /// Canonical edge for `|0⟩|e0⟩ + |1⟩|e1⟩`.
    pub fn make_edge(&mut self, e0: &Edge, e1: &Edge) -> Result<Edge, DdError> {
        if e0.index() != e1.index() {
            return Err(DdError::LevelMismatch { left: e0.index(), right: e1.index() });
        }
        if e0.is_zero() && e1.is_zero() {
            return Err(DdError::BothZero);
        }
        Ok(match self.mode {
            Mode::Limdd => self.make_edge_limdd(e0, e1),
            Mode::Qmdd => self.make_edge_qmdd(e0, e1),
        })
    }

    /// [`make_edge`](Self::make_edge) that maps two zero children to the zero edge.
    pub fn join(&mut self, e0: &Edge, e1: &Edge) -> Edge {
        debug_assert_eq!(e0.index(), e1.index());
        if e0.is_zero() && e1.is_zero() {
            return Edge::zero(e0.index() + 1);
        }
        match self.mode {
            Mode::Limdd => self.make_edge_limdd(e0, e1),
            Mode::Qmdd => self.make_edge_qmdd(e0, e1),
        }
    }

    fn make_edge_limdd(&mut self, e0: &Edge, e1: &Edge) -> Edge {
        let n = e0.index();
        if e0.is_zero() || (!e1.is_zero() && !self.precedes(e0.target, e1.target)) {
            let r = self.make_edge_limdd(e1, e0);
            return r.premul(&PauliLim::single(n + 1, n + 1, PauliOp::X));
        }
        let a = *e0.lim().expect("nonzero low child");
        let v0 = e0.target;
        let lift_a = a.with_top(PauliOp::I);
        match e1.label {
            Lim::Zero(_) => {
                let id = self.find_or_create(n + 1, v0, false, Lim::Zero(n), v0);
                Edge::new(lift_a, id)
            }
            Lim::Pauli(b) => {
                let hat = &a.inverse() * &b;
                let (high, root) = self.labels_for(&hat, v0, e1.target);
                let id = self.find_or_create(n + 1, v0, false, Lim::Pauli(high), e1.target);
                Edge::new(&lift_a * &root, id)
            }
        }
    }

    fn make_edge_qmdd(&mut self, e0: &Edge, e1: &Edge) -> Edge {
        let n = e0.index();
        let scalar_of = |e: &Edge| {
            e.lim().map(|l| {
                debug_assert!(l.is_identity_string(), "QMDD edges carry scalar labels only");
                l.scalar()
            })
        };
        match (scalar_of(e0), scalar_of(e1)) {
            (Some(a), b) => {
                let (high, target) = match b {
                    Some(b) => (Lim::Pauli(PauliLim::scalar_identity(n, b / a)), e1.target),
                    None => (Lim::Zero(n), e0.target),
                };
                let id = self.find_or_create(n + 1, e0.target, false, high, target);
                Edge::new(PauliLim::scalar_identity(n + 1, a), id)
            }
            (None, Some(b)) => {
                let high = Lim::Pauli(PauliLim::identity(n));
                let id = self.find_or_create(n + 1, e1.target, true, high, e1.target);
                Edge::new(PauliLim::scalar_identity(n + 1, b), id)
            }
            (None, None) => unreachable!("checked by caller"),
        }
    }

    fn find_or_create(&mut self, index: u32, low: NodeId, low_zero: bool, high_label: Lim, high: NodeId) -> NodeId {
        let (x, z) = match &high_label {
            Lim::Zero(_) => (0, 0),
            Lim::Pauli(p) => (p.string().x_bits(), p.string().z_bits()),
        };
        let key = TableKey { low, high, low_zero, high_zero: high_label.is_zero(), x, z };
        if let Some(bucket) = self.table.get(&key) {
            for &id in bucket {
                let same = match (&self.nodes[id.0 as usize].high_label, &high_label) {
                    (Lim::Zero(_), Lim::Zero(_)) => true,
                    (Lim::Pauli(p), Lim::Pauli(q)) => approx_eq(p.scalar(), q.scalar(), EPS_ORD),
                    _ => false,
                };
                if same {
                    return id;
                }
            }
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node { index, low, low_zero, high_label, high });
        self.table.entry(key).or_default().push(id);
        self.root_bases.push(None);
        let stab = match self.mode {
            Mode::Limdd => self.compute_stabilizers(id),
            Mode::Qmdd => GeneratorSet::empty(index),
        };
        self.stabs.push(Arc::new(stab));
        id
    }

    /// Generators of the signed Pauli stabilizers of `|v⟩`.
    pub fn get_stabilizer_gen_set(&self, v: NodeId) -> Arc<GeneratorSet> {
        Arc::clone(&self.stabs[v.0 as usize])
    }

    fn compute_stabilizers(&self, v: NodeId) -> GeneratorSet {
        let node = *self.node(v);
        let n = node.index;
        if n == 1 {
            return single_qubit_stabilizers(&node);
        }
        let g0 = self.get_stabilizer_gen_set(node.low);
        let mut gens: Vec<PauliLim> = Vec::new();
        let b = match node.high_label {
            Lim::Zero(_) => {
                gens.extend(g0.lift(1).iter().copied());
                gens.push(PauliLim::single(n, n, PauliOp::Z));
                return GeneratorSet::new(n, gens)
                    .and_then(|g| g.rref())
                    .expect("stabilizers of a reduced node form a stabilizer group");
            }
            Lim::Pauli(b) => b,
        };
        let g1 = self.get_stabilizer_gen_set(node.high).conjugated_by(&b);
        let id = PauliLim::identity(n - 1);
        let (basis, shared) = PairBasis::analyze(&g0, &g1);
        gens.extend(intersection_of(n - 1, &shared).lift(1).iter().copied());
        let opp = opposite_of(&shared);
        let meet = |p0: &PauliLim, p1: &PauliLim| coset_meet_with(&basis, opp.as_ref(), p0, p1);
        if let Some(pi) = meet(&id, &-id) {
            gens.push(pi.with_top(PauliOp::Z));
        }
        if node.low == node.high {
            if let Some(pi) = meet(&b, &b.inverse()) {
                gens.push(pi.with_top(PauliOp::X));
            }
            let mib = b.scaled(Scalar::new(0.0, -1.0));
            if let Some(pi) = meet(&mib, &mib.inverse()) {
                gens.push(pi.with_top(PauliOp::Y));
            }
        }
        GeneratorSet::new(n, gens)
            .and_then(|g| g.rref())
            .expect("stabilizers of a reduced node form a stabilizer group")
    }

    fn pair_data(&mut self, v0: NodeId, v1: NodeId) -> PairData {
        if let Some(d) = self.pairs.get(&(v0, v1)) {
            return Arc::clone(d);
        }
        let g0 = self.get_stabilizer_gen_set(v0);
        let g1 = self.get_stabilizer_gen_set(v1);
        let (basis, shared) = PairBasis::analyze(&g0, &g1);
        let d = Arc::new((basis, opposite_of(&shared)));
        self.pairs.insert((v0, v1), Arc::clone(&d));
        d
    }

    /// Canonical high label and the root label that compensates for it.
    pub fn get_labels(&mut self, hat_a: &PauliLim, v0: NodeId, v1: NodeId) -> Result<(PauliLim, PauliLim), DdError> {
        let n = self.index_of(v0);
        if n != self.index_of(v1) {
            return Err(DdError::LevelMismatch { left: n, right: self.index_of(v1) });
        }
        if hat_a.n() != n {
            return Err(DdError::LevelMismatch { left: hat_a.n(), right: n });
        }
        Ok(self.labels_for(hat_a, v0, v1))
    }

    fn labels_for(&mut self, hat_a: &PauliLim, v0: NodeId, v1: NodeId) -> (PauliLim, PauliLim) {
        let n = hat_a.n();
        let data = self.pair_data(v0, v1);
        let (basis, opp) = (&data.0, data.1.as_ref());
        let inv = hat_a.inverse();
        let mut cands: Vec<(bool, f64, PauliLim)> = vec![(false, 1.0, *hat_a), (false, -1.0, -*hat_a)];
        if v0 == v1 {
            cands.push((true, 1.0, inv));
            cands.push((true, -1.0, -inv));
        }
        // every candidate has the string of hat_a
        let (g0, g1) = basis.reduce(hat_a);
        let mut best: Option<(bool, f64, LexMin)> = None;
        for (x, sigma, a) in cands {
            let m = lex_min_from_reduced(g0, g1, opp, &a);
            let better = match &best {
                None => true,
                Some((_, _, b)) => m.value.lex_cmp(&b.value) == Ordering::Less,
            };
            if better {
                best = Some((x, sigma, m));
            }
        }
        let (x, sigma, m) = best.expect("at least one candidate");
        let commute = if m.g0.commutes_with(hat_a) { 1.0 } else { -1.0 };
        let top = if sigma * commute < 0.0 { PauliOp::Z } else { PauliOp::I };
        let mut root = m.g0.with_top(top);
        if x {
            root = &hat_a.with_top(PauliOp::X) * &root;
        }
        debug_assert_eq!(root.n(), n + 1);
        (m.value, root)
    }

    fn root_basis(&mut self, v: NodeId) -> Arc<PairBasis> {
        if let Some(b) = &self.root_bases[v.0 as usize] {
            return Arc::clone(b);
        }
        let g = self.get_stabilizer_gen_set(v);
        let b = Arc::new(PairBasis::new(&g, &GeneratorSet::empty(g.n())));
        self.root_bases[v.0 as usize] = Some(Arc::clone(&b));
        b
    }

    /// Canonical representative of `label · Stab(target)`.
    pub fn root_label(&mut self, e: &Edge) -> Result<PauliLim, DdError> {
        let l = *e.lim().ok_or(DdError::ZeroLabel)?;
        if self.mode == Mode::Qmdd {
            return Ok(l);
        }
        let basis = self.root_basis(e.target);
        Ok(arg_lex_min_with(&basis, None, &l).value)
    }

    /// A LIM mapping `|e0⟩` to `|e1⟩` when both point at the same node.
    pub fn get_isomorphism(&self, e0: &Edge, e1: &Edge) -> Option<PauliLim> {
        match (e0.lim(), e1.lim()) {
            (Some(a), Some(b)) if e0.target == e1.target => Some(b * &a.inverse()),
            _ => None,
        }
    }

    /// Whether two reduced edges are related by a Pauli LIM.
    pub fn is_pauli_equivalent(&self, e: &Edge, f: &Edge) -> bool {
        !e.is_zero() && !f.is_zero() && e.target == f.target
    }
}

fn single_qubit_stabilizers(node: &Node) -> GeneratorSet {
    let one = Scalar::new(1.0, 0.0);
    let zero = Scalar::new(0.0, 0.0);
    let lo = if node.low_zero { zero } else { one };
    let hi = node.high_label.pauli().map_or(zero, |p| p.scalar());
    let v = [lo, hi];
    let mut gens = Vec::new();
    for op in [PauliOp::X, PauliOp::Y, PauliOp::Z] {
        for s in [1.0, -1.0] {
            let p = PauliLim::single(1, 1, op).scaled(Scalar::new(s, 0.0));
            let w = p.apply_dense(&v);
            let scale = lo.norm().max(hi.norm());
            if (w[0] - v[0]).norm() <= 1e-9 * scale && (w[1] - v[1]).norm() <= 1e-9 * scale {
                gens.push(p);
            }
        }
    }
    GeneratorSet::new(1, gens)
        .and_then(|g| g.rref())
        .expect("a single-qubit state has a stabilizer group")
}
