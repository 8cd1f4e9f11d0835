use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::{Edge, Lim, Mode, NodeId, Store};
use crate::pauli::{approx_eq, EPS_ORD};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub level: u32,
    pub nodes: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StoreStats {
    /// Nodes reachable from the queried edge, leaf included.
    pub reachable: usize,
    pub per_level: Vec<LevelStats>,
    /// All nodes ever created, leaf included.
    pub unique_table: usize,
}

impl Store {
    /// Nodes reachable from `e`, leaf included (zero for the zero edge).
    pub fn reachable(&self, e: &Edge) -> Vec<NodeId> {
        if e.is_zero() {
            return Vec::new();
        }
        let mut seen = HashSet::new();
        let mut stack = vec![e.target];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            out.push(v);
            let node = self.node(v);
            if node.index > 0 {
                if !node.low_zero {
                    stack.push(node.low);
                }
                if !node.high_label.is_zero() {
                    stack.push(node.high);
                }
            }
        }
        out
    }

    pub fn node_count(&self, e: &Edge) -> usize {
        self.reachable(e).len()
    }

    pub fn stats(&self, e: &Edge) -> StoreStats {
        let reach = self.reachable(e);
        let mut per: BTreeMap<u32, usize> = BTreeMap::new();
        for v in &reach {
            *per.entry(self.index_of(*v)).or_default() += 1;
        }
        StoreStats {
            reachable: reach.len(),
            per_level: per.into_iter().rev().map(|(level, nodes)| LevelStats { level, nodes }).collect(),
            unique_table: self.len(),
        }
    }

    /// Graphviz rendering: one rank per level, dashed low edges, solid high edges.
    pub fn to_dot(&self, e: &Edge) -> String {
        let reach = self.reachable(e);
        let mut by_level: BTreeMap<u32, Vec<NodeId>> = BTreeMap::new();
        for v in &reach {
            by_level.entry(self.index_of(*v)).or_default().push(*v);
        }
        let mut s = String::from("digraph limdd {\n  root [shape=point];\n");
        for (level, ids) in by_level.iter().rev() {
            let _ = write!(s, "  {{ rank=same;");
            for v in ids {
                let shape = if *level == 0 { "box" } else { "circle" };
                let _ = write!(s, " {v} [label=\"{}\", shape={shape}];", if *level == 0 { "1".to_string() } else { level.to_string() });
            }
            let _ = writeln!(s, " }}");
        }
        let _ = writeln!(s, "  root -> {} [label=\"{}\"];", e.target, e.label);
        for v in &reach {
            let node = self.node(*v);
            if node.index == 0 {
                continue;
            }
            if node.low_zero {
                let _ = writeln!(s, "  {v} -> {} [style=dashed, label=\"0\"];", node.low);
            } else {
                let _ = writeln!(s, "  {v} -> {} [style=dashed];", node.low);
            }
            let _ = writeln!(s, "  {v} -> {} [label=\"{}\"];", node.high, node.high_label);
        }
        s.push_str("}\n");
        s
    }

    /// Check the reduced-form rules on every stored node.
    pub fn audit(&mut self) -> Result<(), String> {
        for i in 1..self.len() {
            let id = NodeId(i as u32);
            let node = *self.node(id);
            let n = node.index;
            let (li, hi) = (self.index_of(node.low), self.index_of(node.high));
            if li + 1 != n || hi + 1 != n {
                return Err(format!("{id}: children on levels {li}/{hi}, node on {n}"));
            }
            if node.high_label.n() + 1 != n {
                return Err(format!("{id}: high label width {}", node.high_label.n()));
            }
            if node.high_label.is_zero() && node.high != node.low {
                return Err(format!("{id}: zero high edge must point at the low child"));
            }
            match self.mode() {
                Mode::Limdd => {
                    if node.low_zero {
                        return Err(format!("{id}: zero low edge"));
                    }
                    if let Lim::Pauli(h) = node.high_label {
                        if !self.precedes(node.low, node.high) {
                            return Err(format!("{id}: low child does not precede high child"));
                        }
                        let (canon, _) = self
                            .get_labels(&h, node.low, node.high)
                            .map_err(|e| e.to_string())?;
                        if !canon.approx_eq_tol(&h, 1e-9) {
                            return Err(format!("{id}: high label {h} is not canonical ({canon})"));
                        }
                    }
                }
                Mode::Qmdd => {
                    if let Lim::Pauli(h) = node.high_label {
                        if !h.is_identity_string() {
                            return Err(format!("{id}: Pauli label {h} in QMDD mode"));
                        }
                    }
                }
            }
        }
        let mut groups: HashMap<(NodeId, NodeId, bool, u128, u128), Vec<usize>> = HashMap::new();
        for (i, node) in self.nodes().iter().enumerate().skip(1) {
            let (x, z) = node
                .high_label
                .pauli()
                .map_or((u128::MAX, u128::MAX), |p| (p.string().x_bits(), p.string().z_bits()));
            groups.entry((node.low, node.high, node.low_zero, x, z)).or_default().push(i);
        }
        for ids in groups.values() {
            for (k, &i) in ids.iter().enumerate() {
                for &j in &ids[k + 1..] {
                    let same = match (self.nodes()[i].high_label, self.nodes()[j].high_label) {
                        (Lim::Pauli(p), Lim::Pauli(q)) => approx_eq(p.scalar(), q.scalar(), EPS_ORD),
                        _ => true,
                    };
                    if same {
                        return Err(format!("v{i} and v{j} are duplicates"));
                    }
                }
            }
        }
        Ok(())
    }
}
