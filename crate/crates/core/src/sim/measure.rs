use rand::Rng;

use super::{Engine, SimError};
use crate::dd::{Edge, NodeId};

impl Engine {
    fn check_qubit(e: &Edge, k: u32) -> Result<(), SimError> {
        if k < 1 || k > e.index() {
            return Err(SimError::QubitRange { qubit: k, n: e.index() });
        }
        Ok(())
    }

    /// Probability that qubit `k` reads `y`.
    pub fn measurement_probability(&mut self, e: &Edge, k: u32, y: bool) -> Result<f64, SimError> {
        Self::check_qubit(e, k)?;
        let total = self.squared_norm(e);
        if total == 0.0 {
            return Err(SimError::ZeroState);
        }
        Ok(self.projected_norm(e, k, y) / total)
    }

    /// `‖Π_k^y e‖²`.
    pub(crate) fn projected_norm(&mut self, e: &Edge, k: u32, y: bool) -> f64 {
        let l = match e.lim() {
            None => return 0.0,
            Some(l) => *l,
        };
        // Π^y P = P Π^{y ⊕ x_k}
        let y = y ^ l.string().get(k).bits().0;
        l.scalar().norm_sqr() * self.proj_norm_node(e.target, k, y)
    }

    fn proj_norm_node(&mut self, v: NodeId, k: u32, y: bool) -> f64 {
        let node = *self.store().node(v);
        if node.index == k {
            return self.squared_norm(&if y { node.high_edge() } else { node.low_edge() });
        }
        if let Some(x) = self.caches.proj_norm.get(&(v, k, y)) {
            return *x;
        }
        let r = self.projected_norm(&node.low_edge(), k, y) + self.projected_norm(&node.high_edge(), k, y);
        self.caches.proj_norm.insert((v, k, y), r);
        r
    }

    /// Unnormalized `Π_k^b e`; may be the zero edge.
    pub(crate) fn project_rec(&mut self, e: &Edge, k: u32, b: bool) -> Edge {
        let l = match e.lim() {
            None => return *e,
            Some(l) => *l,
        };
        let b = b ^ l.string().get(k).bits().0;
        self.project_node(e.target, k, b).premul(&l)
    }

    fn project_node(&mut self, v: NodeId, k: u32, b: bool) -> Edge {
        if self.caches_enabled {
            if let Some(r) = self.caches.proj.get(&(v, k, b)) {
                return *r;
            }
        }
        let node = *self.store().node(v);
        let (lo, hi) = (node.low_edge(), node.high_edge());
        let r = if node.index == k {
            let z = Edge::zero(k - 1);
            if b {
                self.store_mut().join(&z, &hi)
            } else {
                self.store_mut().join(&lo, &z)
            }
        } else {
            let a = self.project_rec(&lo, k, b);
            let c = self.project_rec(&hi, k, b);
            self.store_mut().join(&a, &c)
        };
        if self.caches_enabled {
            self.caches.proj.insert((v, k, b), r);
        }
        r
    }

    /// Normalized post-measurement state for outcome `b` on qubit `k`.
    pub fn update_post_meas(&mut self, e: &Edge, k: u32, b: bool) -> Result<Edge, SimError> {
        Self::check_qubit(e, k)?;
        let p = self.project_rec(e, k, b);
        if p.is_zero() || self.squared_norm(&p) == 0.0 {
            return Err(SimError::ZeroProbability);
        }
        self.normalized(&p)
    }

    /// Draw one full measurement outcome, top qubit first.
    pub fn sample<R: Rng + ?Sized>(&mut self, e: &Edge, rng: &mut R) -> Result<Vec<bool>, SimError> {
        if self.squared_norm(e) == 0.0 {
            return Err(SimError::ZeroState);
        }
        let mut cur = *e;
        let mut out = Vec::with_capacity(e.index() as usize);
        for k in (1..=e.index()).rev() {
            let p0 = self.projected_norm(&cur, k, false);
            let p1 = self.projected_norm(&cur, k, true);
            let b = rng.gen::<f64>() * (p0 + p1) >= p0;
            cur = self.project_rec(&cur, k, b);
            out.push(b);
        }
        Ok(out)
    }

    /// Probability of reading `bits` (top first) in a full measurement.
    pub fn prob_of_string(&mut self, e: &Edge, bits: &[bool]) -> Result<f64, SimError> {
        if bits.len() != e.index() as usize {
            return Err(SimError::Dimension { gate: bits.len() as u32, state: e.index() });
        }
        let total = self.squared_norm(e);
        if total == 0.0 {
            return Err(SimError::ZeroState);
        }
        let mut cur = *e;
        for (i, &b) in bits.iter().enumerate() {
            cur = self.project_rec(&cur, e.index() - i as u32, b);
            if cur.is_zero() {
                return Ok(0.0);
            }
        }
        Ok(self.squared_norm(&cur) / total)
    }
}
