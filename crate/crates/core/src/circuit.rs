//! Line-based circuit format, dense reference runs, and the report produced
//! by a simulation run.
//!
//! ```text
//! qubits 3          # header, required before anything else
//! h 0
//! cx 0 1            # control, target
//! mcx 0 !1 2        # controls (a leading ! fires on |0⟩), then the target
//! measure_all
//! ```
//!
//! User qubit `0` is the top qubit and the leftmost character of every bit
//! string.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dd::{parse_bits, Edge, Mode, DENSE_LIMIT};
use crate::dense;
use crate::pauli::{Scalar, MAX_QUBITS};
use crate::sim::{Engine, Gate, SimError, Stats};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Y,
    Z,
    Cx,
    Cz,
    Mcx,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Mcx => "mcx",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        use GateKind::*;
        [H, S, Sdg, T, Tdg, X, Y, Z, Cx, Cz, Mcx].into_iter().find(|k| k.name() == s)
    }

    fn arity(self) -> Option<usize> {
        match self {
            GateKind::Cx | GateKind::Cz => Some(2),
            GateKind::Mcx => None,
            _ => Some(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instr {
    /// `negated[i]` marks an MCX control that fires on `|0⟩`.
    Gate { kind: GateKind, qubits: Vec<u32>, negated: Vec<bool> },
    Measure(u32),
    MeasureAll,
}

impl Instr {
    pub fn gate(kind: GateKind, qubits: &[u32]) -> Self {
        Instr::Gate { kind, qubits: qubits.to_vec(), negated: vec![false; qubits.len()] }
    }

    /// `(qubit, fires_on_one)` controls, then the target.
    pub fn mcx(controls: &[(u32, bool)], target: u32) -> Self {
        let mut qubits: Vec<u32> = controls.iter().map(|c| c.0).collect();
        let mut negated: Vec<bool> = controls.iter().map(|c| !c.1).collect();
        qubits.push(target);
        negated.push(false);
        Instr::Gate { kind: GateKind::Mcx, qubits, negated }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Gate { kind, qubits, negated } => {
                write!(f, "{}", kind.name())?;
                for (q, neg) in qubits.iter().zip(negated) {
                    write!(f, " {}{q}", if *neg { "!" } else { "" })?;
                }
                Ok(())
            }
            Instr::Measure(q) => write!(f, "measure {q}"),
            Instr::MeasureAll => write!(f, "measure_all"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Circuit {
    pub n: u32,
    pub ops: Vec<Instr>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CircuitError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{n} qubits exceeds the dense limit of {limit}")]
    DenseLimit { n: u32, limit: u32 },
    #[error("bad bit string {bits:?} for {n} qubits")]
    Bits { bits: String, n: u32 },
    #[error("unknown backend {0:?} (expected limdd, qmdd or dense)")]
    Backend(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

fn perr(line: usize, msg: impl Into<String>) -> CircuitError {
    CircuitError::Parse { line, msg: msg.into() }
}

/// Parse the line format; errors carry 1-based line numbers.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut n: Option<u32> = None;
    let mut ops = Vec::new();
    let mut measured = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let head = words.next().unwrap().to_ascii_lowercase();
        let args: Vec<&str> = words.collect();
        if head == "qubits" {
            if n.is_some() {
                return Err(perr(line, "duplicate qubits header"));
            }
            let [a] = args[..] else {
                return Err(perr(line, "qubits takes one argument"));
            };
            let k: u32 = a.parse().map_err(|_| perr(line, format!("bad qubit count {a:?}")))?;
            if k == 0 || k > MAX_QUBITS {
                return Err(perr(line, format!("qubit count must be in 1..={MAX_QUBITS}")));
            }
            n = Some(k);
            continue;
        }
        let n = n.ok_or_else(|| perr(line, "missing qubits header"))?;
        let qubit = |s: &str| -> Result<(u32, bool), CircuitError> {
            let (neg, digits) = match s.strip_prefix('!') {
                Some(d) => (true, d),
                None => (false, s),
            };
            let q: u32 = digits.parse().map_err(|_| perr(line, format!("bad qubit {s:?}")))?;
            if q >= n {
                return Err(perr(line, format!("qubit {q} out of range for {n} qubits")));
            }
            Ok((q, neg))
        };
        match head.as_str() {
            "measure" => {
                let [a] = args[..] else {
                    return Err(perr(line, "measure takes one qubit"));
                };
                let (q, neg) = qubit(a)?;
                if neg {
                    return Err(perr(line, "! is only allowed on mcx controls"));
                }
                ops.push(Instr::Measure(q));
                measured = true;
            }
            "measure_all" => {
                if !args.is_empty() {
                    return Err(perr(line, "measure_all takes no arguments"));
                }
                ops.push(Instr::MeasureAll);
                measured = true;
            }
            name => {
                let kind = GateKind::from_name(name).ok_or_else(|| perr(line, format!("unknown gate {name:?}")))?;
                if measured {
                    return Err(perr(line, "gate after a measure directive"));
                }
                match kind.arity() {
                    Some(k) if args.len() != k => {
                        return Err(perr(line, format!("{name} takes {k} qubit(s), got {}", args.len())));
                    }
                    None if args.len() < 2 => return Err(perr(line, "mcx needs at least one control and a target")),
                    _ => {}
                }
                let parsed = args.iter().map(|a| qubit(a)).collect::<Result<Vec<_>, _>>()?;
                let (qubits, negated): (Vec<u32>, Vec<bool>) = parsed.into_iter().unzip();
                if negated[..negated.len() - 1].iter().any(|&b| b) && kind != GateKind::Mcx || negated[negated.len() - 1] {
                    return Err(perr(line, "! is only allowed on mcx controls"));
                }
                for (j, q) in qubits.iter().enumerate() {
                    if qubits[..j].contains(q) {
                        return Err(perr(line, format!("qubit {q} repeated")));
                    }
                }
                ops.push(Instr::Gate { kind, qubits, negated });
            }
        }
    }
    let n = n.ok_or_else(|| perr(text.lines().count().max(1), "missing qubits header"))?;
    Ok(Circuit { n, ops })
}

impl FromStr for Circuit {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_circuit(s)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

impl Circuit {
    pub fn new(n: u32) -> Self {
        Self { n, ops: Vec::new() }
    }

    pub fn push(&mut self, kind: GateKind, qubits: &[u32]) -> &mut Self {
        self.ops.push(Instr::gate(kind, qubits));
        self
    }

    /// The canonical text form; parses back to an equal circuit.
    pub fn format(&self) -> String {
        self.to_string()
    }

    pub fn gate_count(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, Instr::Gate { .. })).count()
    }

    /// Level of user qubit `q`.
    pub fn level(&self, q: u32) -> u32 {
        self.n - q
    }

    /// The gates on diagram levels (qubit `n` on top).
    pub fn gates(&self) -> Vec<Gate> {
        let lv = |q: u32| self.n - q;
        self.ops
            .iter()
            .filter_map(|op| {
                let Instr::Gate { kind, qubits, negated } = op else { return None };
                let q0 = lv(qubits[0]);
                Some(match kind {
                    GateKind::H => Gate::H(q0),
                    GateKind::S => Gate::S(q0),
                    GateKind::Sdg => Gate::Sdg(q0),
                    GateKind::T => Gate::T(q0),
                    GateKind::Tdg => Gate::Tdg(q0),
                    GateKind::X => Gate::X(q0),
                    GateKind::Y => Gate::Y(q0),
                    GateKind::Z => Gate::Z(q0),
                    GateKind::Cx => Gate::Cx { control: q0, target: lv(qubits[1]) },
                    GateKind::Cz => Gate::Cz(q0, lv(qubits[1])),
                    GateKind::Mcx => {
                        let k = qubits.len() - 1;
                        let controls = qubits[..k].iter().zip(negated).map(|(&q, &neg)| (lv(q), !neg)).collect();
                        Gate::Mcx { controls, target: lv(qubits[k]) }
                    }
                })
            })
            .collect()
    }

    /// Qubits named by measure directives, in order; all qubits for
    /// `measure_all` or when there are none.
    pub fn measured_qubits(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for op in &self.ops {
            match op {
                Instr::MeasureAll => return (0..self.n).collect(),
                Instr::Measure(q) if !out.contains(q) => out.push(*q),
                _ => {}
            }
        }
        if out.is_empty() {
            (0..self.n).collect()
        } else {
            out
        }
    }
}

/// Full state vector after all gates; index bit `n - 1 - q` is user qubit `q`.
pub fn dense_simulate(c: &Circuit) -> Result<Vec<Scalar>, CircuitError> {
    if c.n > DENSE_LIMIT {
        return Err(CircuitError::DenseLimit { n: c.n, limit: DENSE_LIMIT });
    }
    Ok(dense::simulate(c.n, &c.gates()))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Limdd,
    Qmdd,
    Dense,
}

impl FromStr for Backend {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "limdd" => Ok(Backend::Limdd),
            "qmdd" => Ok(Backend::Qmdd),
            "dense" => Ok(Backend::Dense),
            _ => Err(CircuitError::Backend(s.to_string())),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Limdd => "limdd",
            Backend::Qmdd => "qmdd",
            Backend::Dense => "dense",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub mode: Backend,
    pub seed: u64,
    pub shots: usize,
    /// Bit strings whose amplitudes are reported.
    pub amplitudes: Vec<String>,
    pub stats: bool,
    pub compare: Option<Backend>,
    pub dot: bool,
}

/// Largest amplitude difference accepted by a comparison run.
pub const COMPARE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeEntry {
    pub bits: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureEntry {
    pub qubit: u32,
    pub p1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub mode: Backend,
    pub max_diff: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub mode: Backend,
    pub n: u32,
    pub gates: usize,
    pub amplitudes: Vec<AmplitudeEntry>,
    pub measured: Vec<MeasureEntry>,
    pub samples: Vec<String>,
    /// Reachable nodes of the final diagram, leaf included.
    pub nodes: Option<usize>,
    pub stats: Option<Stats>,
    pub compare: Option<Comparison>,
    #[serde(skip)]
    pub dot: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Human-readable `key=value` text.
    pub fn to_text(&self) -> String {
        let mut s = format!("mode={}\nn={}\ngates={}\n", self.mode, self.n, self.gates);
        if let Some(k) = self.nodes {
            s.push_str(&format!("nodes={k}\n"));
        }
        for a in &self.amplitudes {
            s.push_str(&format!("amplitude[{}]={}{:+}i\n", a.bits, a.re, a.im));
        }
        for m in &self.measured {
            s.push_str(&format!("p1[{}]={}\n", m.qubit, m.p1));
        }
        for x in &self.samples {
            s.push_str(&format!("sample={x}\n"));
        }
        if let Some(c) = &self.compare {
            s.push_str(&format!("compare_mode={}\nmax_diff={:e}\ncompare_ok={}\n", c.mode, c.max_diff, c.ok));
        }
        if let Some(st) = &self.stats {
            s.push_str(&st.to_key_values());
        }
        s
    }
}

/// A finished simulation in one backend.
pub enum Simulated {
    Diagram { engine: Box<Engine>, state: Edge },
    Dense(Vec<Scalar>),
}

impl Simulated {
    pub fn run(mode: Backend, c: &Circuit) -> Result<Self, CircuitError> {
        let dd_mode = match mode {
            Backend::Dense => return Ok(Simulated::Dense(dense_simulate(c)?)),
            Backend::Limdd => Mode::Limdd,
            Backend::Qmdd => Mode::Qmdd,
        };
        let mut engine = Box::new(Engine::new(dd_mode));
        let mut e = engine.zero_state(c.n);
        engine.track(&e);
        for g in c.gates() {
            e = engine.apply(&e, &g)?;
            engine.track(&e);
        }
        Ok(Simulated::Diagram { engine, state: e })
    }

    pub fn amplitude(&self, bits: &[bool]) -> Result<Scalar, CircuitError> {
        match self {
            Simulated::Diagram { engine, state } => Ok(engine.amplitude(state, bits)?),
            Simulated::Dense(v) => Ok(v[bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize)]),
        }
    }

    pub fn to_dense(&self) -> Result<Vec<Scalar>, CircuitError> {
        match self {
            Simulated::Diagram { engine, state } => {
                if state.index() > DENSE_LIMIT {
                    return Err(CircuitError::DenseLimit { n: state.index(), limit: DENSE_LIMIT });
                }
                Ok(engine.to_dense(state)?)
            }
            Simulated::Dense(v) => Ok(v.clone()),
        }
    }

    /// Probability that user qubit `q` of an `n`-qubit register reads 1.
    pub fn p1(&mut self, n: u32, q: u32) -> Result<f64, CircuitError> {
        match self {
            Simulated::Diagram { engine, state } => Ok(engine.measurement_probability(state, n - q, true)?),
            Simulated::Dense(v) => {
                let bit = n - 1 - q;
                let tot: f64 = v.iter().map(|a| a.norm_sqr()).sum();
                let one: f64 = v.iter().enumerate().filter(|(j, _)| j >> bit & 1 == 1).map(|(_, a)| a.norm_sqr()).sum();
                Ok(one / tot)
            }
        }
    }

    /// One full outcome, user qubit 0 first.
    pub fn sample<R: Rng>(&mut self, n: u32, rng: &mut R) -> Result<Vec<bool>, CircuitError> {
        match self {
            Simulated::Diagram { engine, state } => Ok(engine.sample(state, rng)?),
            Simulated::Dense(v) => {
                let tot: f64 = v.iter().map(|a| a.norm_sqr()).sum();
                let mut r = rng.gen::<f64>() * tot;
                let mut pick = v.len() - 1;
                for (j, a) in v.iter().enumerate() {
                    r -= a.norm_sqr();
                    if r < 0.0 {
                        pick = j;
                        break;
                    }
                }
                Ok((0..n).rev().map(|b| pick >> b & 1 == 1).collect())
            }
        }
    }
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Simulate `c` as configured and collect the requested outputs.
pub fn run(cfg: &RunConfig, c: &Circuit) -> Result<Report, CircuitError> {
    let mut sim = Simulated::run(cfg.mode, c)?;
    let mut amplitudes = Vec::new();
    for s in &cfg.amplitudes {
        let bits = parse_bits(s).filter(|b| b.len() == c.n as usize).ok_or(CircuitError::Bits { bits: s.clone(), n: c.n })?;
        let a = sim.amplitude(&bits)?;
        amplitudes.push(AmplitudeEntry { bits: s.clone(), re: a.re, im: a.im });
    }
    let has_measure = c.ops.iter().any(|o| !matches!(o, Instr::Gate { .. }));
    let targets = c.measured_qubits();
    let mut measured = Vec::new();
    if has_measure {
        for &q in &targets {
            measured.push(MeasureEntry { qubit: q, p1: sim.p1(c.n, q)? });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples = Vec::with_capacity(cfg.shots);
    for _ in 0..cfg.shots {
        let full = sim.sample(c.n, &mut rng)?;
        let picked: Vec<bool> = targets.iter().map(|&q| full[q as usize]).collect();
        samples.push(bit_string(&picked));
    }
    let compare = match cfg.compare {
        None => None,
        Some(other) => {
            let a = sim.to_dense()?;
            let b = Simulated::run(other, c)?.to_dense()?;
            let max_diff = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            Some(Comparison { mode: other, max_diff, ok: max_diff <= COMPARE_TOL })
        }
    };
    let (nodes, stats, dot) = match &sim {
        Simulated::Diagram { engine, state } => (
            Some(engine.store().node_count(state)),
            cfg.stats.then(|| engine.stats.clone()),
            cfg.dot.then(|| engine.store().to_dot(state)),
        ),
        Simulated::Dense(_) => (None, None, None),
    };
    Ok(Report {
        schema: 1,
        mode: cfg.mode,
        n: c.n,
        gates: c.gate_count(),
        amplitudes,
        measured,
        samples,
        nodes,
        stats,
        compare,
        dot,
    })
}
