//! Simulated-annealing search for small stabilizer-rank decompositions of
//! Dicke states, on dense vectors.
//!
//! A candidate is a set `V` of `χ` stabilizer states; its score is the
//! fidelity `⟨D|Π_V|D⟩` of the target with the span of `V`. Moves replace one
//! member `ψ` by the normalized `(I + P)ψ` for a random signed Pauli `P`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dense;
use crate::pauli::{PauliLim, PauliString, Scalar};
use crate::sim::Gate;
use crate::states::{dicke_dense, StateError};

/// Gram-Schmidt drops vectors whose remaining norm is below this.
pub const RANK_TOL: f64 = 1e-10;
/// Fidelity at which a search stops and tries to certify.
pub const SUCCESS_FIDELITY: f64 = 1.0 - 1e-7;
/// Largest reconstruction residual accepted as a decomposition.
pub const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnealConfig {
    pub n: u32,
    pub w: u32,
    pub chi: usize,
    pub beta_start: f64,
    pub beta_end: f64,
    pub beta_steps: usize,
    pub steps_per_beta: usize,
    pub seed: u64,
}

impl AnnealConfig {
    pub fn new(n: u32, w: u32, chi: usize, seed: u64) -> Self {
        Self { n, w, chi, beta_start: 1.0, beta_end: 4000.0, beta_steps: 100, steps_per_beta: 1000, seed }
    }

    /// The `k`-th inverse temperature of the linear grid.
    pub fn beta(&self, k: usize) -> f64 {
        if self.beta_steps <= 1 {
            return self.beta_start;
        }
        self.beta_start + (self.beta_end - self.beta_start) * k as f64 / (self.beta_steps - 1) as f64
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Scalar]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of `span(vs)` plus, for each input, its coordinates
/// in that basis (`None` when the vector was dependent on earlier ones).
fn gram_schmidt(vs: &[Vec<Scalar>]) -> (Vec<Vec<Scalar>>, Vec<Option<Vec<Scalar>>>) {
    let mut q: Vec<Vec<Scalar>> = Vec::new();
    let mut r = Vec::new();
    for v in vs {
        let mut u = v.clone();
        let mut coords = Vec::with_capacity(q.len() + 1);
        for b in &q {
            let c = dot(b, &u);
            for (x, y) in u.iter_mut().zip(b) {
                *x -= c * y;
            }
            coords.push(c);
        }
        let nu = norm(&u);
        if nu < RANK_TOL * norm(v).max(1.0) {
            r.push(None);
            continue;
        }
        coords.push(Scalar::new(nu, 0.0));
        q.push(u.into_iter().map(|x| x / nu).collect());
        r.push(Some(coords));
    }
    (q, r)
}

/// `|⟨D|Π_V|D⟩|` for the projector onto `span(V)`.
pub fn fidelity(v: &[Vec<Scalar>], target: &[Scalar]) -> f64 {
    let (q, _) = gram_schmidt(v);
    q.iter().map(|b| dot(b, target).norm_sqr()).sum()
}

/// Random stabilizer state: `3n` layers of random `H`/`S` on every qubit
/// followed by one random CX, applied to `|0…0⟩`.
pub fn random_stabilizer_state<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Vec<Scalar> {
    let mut v = dense::zero_state(n);
    for _ in 0..3 * n {
        for q in 1..=n {
            match rng.gen_range(0..3) {
                0 => dense::apply(&mut v, &Gate::H(q)),
                1 => dense::apply(&mut v, &Gate::S(q)),
                _ => {}
            }
        }
        if n >= 2 {
            let c = rng.gen_range(1..=n);
            let mut t = rng.gen_range(1..n);
            if t >= c {
                t += 1;
            }
            dense::apply(&mut v, &Gate::Cx { control: c, target: t });
        }
    }
    v
}

/// A uniformly random non-identity Pauli string with sign `±1`.
pub fn random_pauli<R: Rng + ?Sized>(n: u32, rng: &mut R) -> PauliLim {
    let d = 1u128 << n;
    loop {
        let (x, z) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if x | z != 0 {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            return PauliLim::new(Scalar::new(sign, 0.0), PauliString::from_bits(n, x, z));
        }
    }
}

/// Normalized `(I + P)ψ`, or `None` when `P ψ = −ψ`.
pub fn project_plus(p: &PauliLim, psi: &[Scalar]) -> Option<Vec<Scalar>> {
    let pv = p.apply_dense(psi);
    let s: Vec<Scalar> = psi.iter().zip(&pv).map(|(a, b)| a + b).collect();
    let ns = norm(&s);
    if ns < 1e-9 {
        return None;
    }
    Some(s.into_iter().map(|x| x / ns).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub accepted: bool,
    pub fidelity: f64,
    /// Pauli draws discarded because the projection vanished.
    pub redraws: usize,
}

/// Propose one replacement and accept it with `min(1, exp(−β(F − F′)))`.
pub fn anneal_step<R: Rng + ?Sized>(v: &mut [Vec<Scalar>], target: &[Scalar], beta: f64, current: f64, rng: &mut R) -> StepOutcome {
    let n = v[0].len().trailing_zeros();
    let i = rng.gen_range(0..v.len());
    let mut redraws = 0;
    let proposal = loop {
        let p = random_pauli(n, rng);
        match project_plus(&p, &v[i]) {
            Some(s) => break s,
            None => redraws += 1,
        }
    };
    let old = std::mem::replace(&mut v[i], proposal);
    let f = fidelity(v, target);
    let accept = f >= current || rng.gen::<f64>() < (-beta * (current - f)).exp();
    if accept {
        StepOutcome { accepted: true, fidelity: f, redraws }
    } else {
        v[i] = old;
        StepOutcome { accepted: false, fidelity: current, redraws }
    }
}

/// Least-squares coefficients of `target` over `v`, and the residual norm.
pub fn least_squares(v: &[Vec<Scalar>], target: &[Scalar]) -> (Vec<Scalar>, f64) {
    let (q, r) = gram_schmidt(v);
    let rhs: Vec<Scalar> = q.iter().map(|b| dot(b, target)).collect();
    // upper-triangular system over the independent columns
    let cols: Vec<(usize, &Vec<Scalar>)> = r.iter().enumerate().filter_map(|(i, c)| c.as_ref().map(|c| (i, c))).collect();
    let mut coef = vec![Scalar::new(0.0, 0.0); v.len()];
    let mut sol = vec![Scalar::new(0.0, 0.0); cols.len()];
    for k in (0..cols.len()).rev() {
        let mut s = rhs[k];
        for j in k + 1..cols.len() {
            s -= cols[j].1[k] * sol[j];
        }
        sol[k] = s / cols[k].1[k];
    }
    for (k, (i, _)) in cols.iter().enumerate() {
        coef[*i] = sol[k];
    }
    let mut recon = vec![Scalar::new(0.0, 0.0); target.len()];
    for (c, vec) in coef.iter().zip(v) {
        for (x, y) in recon.iter_mut().zip(vec) {
            *x += c * y;
        }
    }
    let residual = norm(&recon.iter().zip(target).map(|(a, b)| a - b).collect::<Vec<_>>());
    (coef, residual)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub n: u32,
    pub w: u32,
    pub chi: usize,
    pub success: bool,
    pub fidelity: f64,
    pub residual: f64,
    pub steps_used: usize,
    #[serde(skip)]
    pub witness: Vec<Vec<Scalar>>,
    #[serde(skip)]
    pub coefficients: Vec<Scalar>,
}

/// One annealing run over the full schedule, stopping early on success.
pub fn search_rank(cfg: &AnnealConfig) -> Result<SearchResult, StateError> {
    let target = dicke_dense(cfg.n, cfg.w)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut v: Vec<Vec<Scalar>> = (0..cfg.chi.max(1)).map(|_| random_stabilizer_state(cfg.n, &mut rng)).collect();
    let mut f = fidelity(&v, &target);
    let mut steps = 0;
    'outer: for k in 0..cfg.beta_steps {
        let beta = cfg.beta(k);
        for _ in 0..cfg.steps_per_beta {
            if f >= SUCCESS_FIDELITY {
                break 'outer;
            }
            f = anneal_step(&mut v, &target, beta, f, &mut rng).fidelity;
            steps += 1;
        }
    }
    let (coefficients, residual) = least_squares(&v, &target);
    Ok(SearchResult {
        n: cfg.n,
        w: cfg.w,
        chi: cfg.chi,
        success: f >= SUCCESS_FIDELITY && residual < RESIDUAL_TOL,
        fidelity: f,
        residual,
        steps_used: steps,
        witness: v,
        coefficients,
    })
}

/// Up to `restarts` independent runs with seeds `seed, seed + 1, …`; returns
/// the first success, or the last failure.
pub fn search_with_restarts(cfg: &AnnealConfig, restarts: usize) -> Result<(SearchResult, usize), StateError> {
    let mut last = None;
    for r in 0..restarts.max(1) {
        let c = AnnealConfig { seed: cfg.seed.wrapping_add(r as u64), ..cfg.clone() };
        let res = search_rank(&c)?;
        if res.success {
            return Ok((res, r + 1));
        }
        last = Some(res);
    }
    Ok((last.expect("at least one run"), restarts.max(1)))
}
