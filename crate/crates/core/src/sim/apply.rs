use super::{ApplyKey, Engine, SimError, CANCEL_TOL};
use crate::dd::{Edge, NodeId};
use crate::pauli::{approx_eq, PauliLim, Scalar};

impl Engine {
    /// `|e⟩ + |f⟩`; may return the zero edge.
    pub fn add(&mut self, e: &Edge, f: &Edge) -> Result<Edge, SimError> {
        if e.index() != f.index() {
            return Err(SimError::Dimension { gate: e.index(), state: f.index() });
        }
        Ok(self.add_rec(e, f))
    }

    pub(crate) fn add_rec(&mut self, e: &Edge, f: &Edge) -> Edge {
        self.stats.add_calls += 1;
        if e.is_zero() {
            return *f;
        }
        if f.is_zero() {
            return *e;
        }
        let n = e.index();
        if n == 0 {
            let a = e.lim().unwrap().scalar();
            let b = f.lim().unwrap().scalar();
            let s = a + b;
            if s.norm() <= CANCEL_TOL * (a.norm() + b.norm()) {
                return Edge::zero(0);
            }
            return Edge::scalar(s);
        }
        let (e, f) = if self.store().precedes(e.target, f.target) { (e, f) } else { (f, e) };
        let a = *e.lim().unwrap();
        let b = *f.lim().unwrap();
        let (v, w) = (e.target, f.target);
        let c = self
            .store_mut()
            .root_label(&Edge::new(&a.inverse() * &b, w))
            .expect("nonzero label");
        let key = (v, w, c.string().x_bits(), c.string().z_bits());
        if self.caches_enabled {
            if let Some(bucket) = self.caches.add.get(&key) {
                let tol = 1e-12 * c.scalar().norm().max(1.0);
                if let Some((_, r)) = bucket.iter().find(|(s, _)| approx_eq(*s, c.scalar(), tol)) {
                    self.stats.add_cache_hits += 1;
                    return r.premul(&a);
                }
            }
            self.stats.add_cache_misses += 1;
        }
        self.stats.add_computed += 1;
        let ev = Edge::new(PauliLim::identity(n), v);
        let fw = Edge::new(c, w);
        let mut kids = [Edge::zero(n - 1); 2];
        for (b, kid) in kids.iter_mut().enumerate() {
            let x = self.store().follow_unchecked(&ev, b == 1);
            let y = self.store().follow_unchecked(&fw, b == 1);
            *kid = self.add_rec(&x, &y);
        }
        let r = self.store_mut().join(&kids[0], &kids[1]);
        if self.caches_enabled {
            self.caches.add.entry(key).or_default().push((c.scalar(), r));
        }
        r.premul(&a)
    }

    /// `U|e⟩` for a gate diagram `u` on `2n` interleaved row/column levels.
    pub fn apply_gate(&mut self, u: &Edge, e: &Edge) -> Result<Edge, SimError> {
        if u.index() != 2 * e.index() {
            return Err(SimError::Dimension { gate: u.index() / 2, state: e.index() });
        }
        Ok(self.apply_rec(u, e))
    }

    fn apply_rec(&mut self, u: &Edge, e: &Edge) -> Edge {
        self.stats.apply_calls += 1;
        let n = e.index();
        if u.is_zero() || e.is_zero() {
            return Edge::zero(n);
        }
        let la = *u.lim().unwrap();
        let lb = *e.lim().unwrap();
        if n == 0 {
            return Edge::scalar(la.scalar() * lb.scalar());
        }
        let factor = la.scalar() * lb.scalar();
        let p = self.store_mut().root_label(&Edge::new(la.unscaled(), u.target)).unwrap();
        let q = self.store_mut().root_label(&Edge::new(lb.unscaled(), e.target)).unwrap();
        let key = match (p.quarter_phase(), q.quarter_phase()) {
            (Some(uph), Some(vph)) if self.caches_enabled => Some(ApplyKey {
                u: u.target,
                ux: p.string().x_bits(),
                uz: p.string().z_bits(),
                uph,
                v: e.target,
                vx: q.string().x_bits(),
                vz: q.string().z_bits(),
                vph,
            }),
            _ => None,
        };
        if let Some(k) = &key {
            if let Some(r) = self.caches.apply.get(k) {
                self.stats.apply_cache_hits += 1;
                return r.scaled(factor);
            }
            self.stats.apply_cache_misses += 1;
        }
        let uu = Edge::new(p, u.target);
        let vv = Edge::new(q, e.target);
        let mut f = [[Edge::zero(n - 1); 2]; 2];
        for r in 0..2 {
            let ur = self.store().follow_unchecked(&uu, r == 1);
            for c in 0..2 {
                let urc = self.store().follow_unchecked(&ur, c == 1);
                let vc = self.store().follow_unchecked(&vv, c == 1);
                f[r][c] = self.apply_rec(&urc, &vc);
            }
        }
        let e0 = self.add_rec(&f[0][0], &f[0][1]);
        let e1 = self.add_rec(&f[1][0], &f[1][1]);
        let res = self.store_mut().join(&e0, &e1);
        if let Some(k) = key {
            self.caches.apply.insert(k, res);
        }
        res.scaled(factor)
    }

    /// `⟨e|e⟩`.
    pub fn squared_norm(&mut self, e: &Edge) -> f64 {
        match e.lim() {
            None => 0.0,
            Some(l) => l.scalar().norm_sqr() * self.node_norm(e.target),
        }
    }

    pub(crate) fn node_norm(&mut self, v: NodeId) -> f64 {
        if v == NodeId::LEAF {
            return 1.0;
        }
        if let Some(x) = self.caches.norm.get(&v) {
            return *x;
        }
        let node = *self.store().node(v);
        let lo = if node.low_zero { 0.0 } else { self.node_norm(node.low) };
        let hi = match node.high_label.pauli() {
            None => 0.0,
            Some(h) => h.scalar().norm_sqr() * self.node_norm(node.high),
        };
        let r = lo + hi;
        self.caches.norm.insert(v, r);
        r
    }

    /// Scale `e` to unit norm.
    pub fn normalized(&mut self, e: &Edge) -> Result<Edge, SimError> {
        let nn = self.squared_norm(e);
        if nn == 0.0 {
            return Err(SimError::ZeroState);
        }
        Ok(e.scaled(Scalar::new(1.0 / nn.sqrt(), 0.0)))
    }
}
