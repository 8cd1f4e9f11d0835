//! Acceptance checks, one PASS/FAIL line each. Exits nonzero if any fail.

mod common;

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use common::{all_strings, c, enumerate_group, group_keys, key, max_diff};
use limdd::dd::{Edge, Lim, Store};
use limdd::pauli::{intersect_isomorphism_sets, intersect_stabilizer_groups, GeneratorSet, PauliLim, PauliString};
use limdd::sim::{Engine, Gate};
use limdd::stabrank::{search_with_restarts, AnnealConfig, RESIDUAL_TOL};
use limdd::states::{cluster_state, graph_state, stabilizer_state, w_state_circuit, Graph};
use limdd::dense;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn other_qubit<R: Rng>(n: u32, q: u32, rng: &mut R) -> u32 {
    let mut t = rng.gen_range(1..n);
    if t >= q {
        t += 1;
    }
    t
}

fn clifford_gate<R: Rng>(n: u32, rng: &mut R) -> Gate {
    let q = rng.gen_range(1..=n);
    match rng.gen_range(0..8) {
        0 => Gate::X(q),
        1 => Gate::Y(q),
        2 => Gate::Z(q),
        3 => Gate::S(q),
        4 => Gate::Sdg(q),
        5 if n > 1 => Gate::Cx { control: q, target: other_qubit(n, q, rng) },
        6 if n > 1 => Gate::Cz(q, other_qubit(n, q, rng)),
        _ => Gate::H(q),
    }
}

fn clifford_t_gate<R: Rng>(n: u32, rng: &mut R) -> Gate {
    let q = rng.gen_range(1..=n);
    match rng.gen_range(0..10) {
        0 => Gate::T(q),
        1 => Gate::Tdg(q),
        2 => Gate::T(q),
        _ => clifford_gate(n, rng),
    }
}

fn tower_ok(st: &Store, e: &Edge, n: u32) -> bool {
    let reach = st.reachable(e);
    reach.len() == n as usize + 1
        && reach.iter().all(|&v| match st.node(v).high_label {
            Lim::Zero(_) => true,
            Lim::Pauli(h) => [c(1., 0.), c(-1., 0.), c(0., 1.), c(0., -1.)].iter().any(|u| (h.scalar() - u).norm() < 1e-9),
        })
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut worst = 0.0f64;
    let mut gates = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=8);
        let depth = rng.gen_range(1..=40);
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n);
        let mut v = dense::zero_state(n);
        for _ in 0..depth {
            let g = clifford_t_gate(n, &mut rng);
            e = eng.apply(&e, &g).map_err(|err| format!("circuit {i}: {err}"))?;
            dense::apply(&mut v, &g);
            let d = max_diff(&eng.to_dense(&e).unwrap(), &v);
            worst = worst.max(d);
            gates += 1;
            if d >= 1e-8 {
                return Err(format!("circuit {i} (n={n}) after {g:?}: error {d:e}"));
            }
        }
    }
    Ok(format!("200 circuits, {gates} gates, max error {worst:.1e}"))
}

fn stabilizer_towers() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut checked = 0;
    for i in 0..100 {
        let n = 4 + i % 9;
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n);
        for _ in 0..6 * n {
            let g = clifford_gate(n, &mut rng);
            e = eng.apply(&e, &g).map_err(|err| err.to_string())?;
            checked += 1;
            if !tower_ok(eng.store(), &e, n) {
                return Err(format!("circuit {i} (n={n}) is not a tower after {g:?}"));
            }
        }
    }
    Ok(format!("{checked} intermediate states, all towers with unit high scalars"))
}

fn cluster_separation() -> Check {
    let mut counts = Vec::new();
    for k in 2..=5usize {
        let mut l = Engine::limdd();
        let mut q = Engine::qmdd();
        let a = cluster_state(&mut l, k, k);
        let b = cluster_state(&mut q, k, k);
        counts.push((k, l.store().node_count(&a), q.store().node_count(&b)));
    }
    let text = counts.iter().map(|(k, l, q)| format!("k={k}: {l} vs {q}")).collect::<Vec<_>>().join(", ");
    for &(k, l, _) in &counts {
        if l != k * k + 1 {
            return Err(format!("LIMDD count for k={k} is {l}; {text}"));
        }
    }
    if !counts.windows(2).all(|w| w[1].2 > w[0].2) {
        return Err(format!("QMDD counts not increasing; {text}"));
    }
    let (_, l4, q4) = counts[2];
    if q4 < 2 * l4 {
        return Err(format!("QMDD at k=4 below twice LIMDD; {text}"));
    }
    Ok(text)
}

fn random_stabilizer_gates<R: Rng>(n: u32, rng: &mut R) -> Vec<Gate> {
    (0..4 * n)
        .map(|_| {
            let q = rng.gen_range(1..=n);
            match rng.gen_range(0..3) {
                0 => Gate::H(q),
                1 => Gate::S(q),
                _ => Gate::Cx { control: q, target: other_qubit(n, q, rng) },
            }
        })
        .collect()
}

fn hadamard_cost() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let sizes: Vec<u32> = (4..=12).collect();
    let mut samples: Vec<Vec<Duration>> = vec![Vec::new(); sizes.len()];
    let mut worst = (0u64, 0u32);
    // sizes interleaved so machine-level drift hits every n alike
    for _ in 0..200 {
        for (i, &n) in sizes.iter().enumerate() {
            // a fresh store per sample, so small n gains nothing from earlier states
            let mut eng = Engine::limdd();
            let gates = random_stabilizer_gates(n, &mut rng);
            let e = stabilizer_state(&mut eng, n, &gates).map_err(|err| err.to_string())?;
            let q = rng.gen_range(1..=n);
            eng.clear_caches();
            eng.reset_stats();
            let t = Instant::now();
            let out = eng.apply(&e, &Gate::H(q)).map_err(|err| err.to_string())?;
            samples[i].push(t.elapsed());
            std::hint::black_box(out);
            let calls = eng.stats.add_computed;
            if calls > 5 * n as u64 {
                return Err(format!("n={n}: H on qubit {q} made {calls} Add calls"));
            }
            if calls as f64 / n as f64 > worst.0 as f64 / worst.1.max(1) as f64 {
                worst = (calls, n);
            }
        }
    }
    let times: Vec<(f64, Duration)> = sizes
        .iter()
        .zip(samples.iter_mut())
        .map(|(&n, s)| {
            s.sort();
            (n as f64, s[s.len() / 2])
        })
        .collect();
    // least-squares slope of log(time) against log(n)
    let pts: Vec<(f64, f64)> = times.iter().map(|(n, t)| (n.ln(), t.as_secs_f64().max(1e-9).ln())).collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let detail = format!(
        "max {} Add calls at n={} (bound {}), time exponent {slope:.2}, median {:?} at n=12",
        worst.0,
        worst.1,
        5 * worst.1,
        times.last().map(|t| t.1).unwrap_or(Duration::ZERO)
    );
    if slope >= 2.0 {
        return Err(detail);
    }
    Ok(detail)
}

fn w_state_efficiency() -> Check {
    let mut parts = Vec::new();
    for n in [4usize, 8, 16, 32] {
        let circ = w_state_circuit(n).map_err(|e| e.to_string())?;
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n as u32);
        eng.track(&e);
        for g in circ.gates() {
            e = eng.apply(&e, &g).map_err(|err| err.to_string())?;
            eng.track(&e);
        }
        let peak = eng.stats.peak_nodes;
        if peak > 4 * n * n {
            return Err(format!("n={n}: peak {peak} nodes > {}", 4 * n * n));
        }
        let want = 1.0 / (n as f64).sqrt();
        let mut mass = 0.0;
        for j in 0..n {
            let mut bits = vec![false; n];
            bits[j] = true;
            let a = eng.amplitude(&e, &bits).map_err(|err| err.to_string())?;
            if (a - c(want, 0.)).norm() >= 1e-9 {
                return Err(format!("n={n}: amplitude {a} at weight-1 string {j}"));
            }
            mass += a.norm_sqr();
        }
        if (mass - 1.0).abs() > 1e-9 {
            return Err(format!("n={n}: weight-1 mass {mass}"));
        }
        parts.push(format!("n={n} peak {peak}"));
    }
    Ok(parts.join(", "))
}

fn disjoint_or_diagonal(a: &Gate, b: &Gate) -> bool {
    let diag = |g: &Gate| matches!(g, Gate::Z(_) | Gate::S(_) | Gate::Sdg(_) | Gate::T(_) | Gate::Tdg(_) | Gate::Cz(..));
    let (qa, qb) = (a.qubits(), b.qubits());
    (diag(a) && diag(b)) || qa.iter().all(|q| !qb.contains(q))
}

fn run_gates(eng: &mut Engine, n: u32, gates: &[Gate]) -> Edge {
    let mut e = eng.zero_state(n);
    for g in gates {
        e = eng.apply(&e, g).expect("valid gate");
    }
    e
}

fn canonicity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut eng = Engine::limdd();
    let mut kinds = [0usize; 4];
    for i in 0..1000 {
        let n = rng.gen_range(1..=8);
        let gates: Vec<Gate> = (0..rng.gen_range(1..=30)).map(|_| clifford_t_gate(n, &mut rng)).collect();
        let a = run_gates(&mut eng, n, &gates);
        let kind = i % 4;
        let b = match kind {
            // commuting neighbours swapped
            0 => {
                let mut g2 = gates.clone();
                for _ in 0..3 * g2.len() {
                    let j = rng.gen_range(0..g2.len());
                    if j + 1 < g2.len() && disjoint_or_diagonal(&g2[j], &g2[j + 1]) {
                        g2.swap(j, j + 1);
                    }
                }
                run_gates(&mut eng, n, &g2)
            }
            // input relabeled by Z stabilizers of |0…0⟩
            1 => {
                let mut g2: Vec<Gate> = (1..=n).filter(|_| rng.gen_bool(0.5)).map(Gate::Z).collect();
                g2.extend(gates.iter().cloned());
                run_gates(&mut eng, n, &g2)
            }
            // output multiplied by a random Pauli string
            2 => {
                let p = PauliLim::from_string(PauliString::from_bits(n, rng.gen_range(0..1u128 << n), rng.gen_range(0..1u128 << n)));
                eng.apply_pauli_string(&a, &p)
            }
            // rebuilt from the dense vector
            _ => {
                let v = eng.to_dense(&a).unwrap();
                eng.store_mut().from_dense(&v).map_err(|e| e.to_string())?
            }
        };
        if a.target != b.target {
            return Err(format!("pair {i} (n={n}, construction {kind}) gave different root nodes"));
        }
        kinds[kind] += 1;
    }
    Ok(format!("1000 pairs (reordered {}, relabeled {}, Pauli-shifted {}, rebuilt {})", kinds[0], kinds[1], kinds[2], kinds[3]))
}

fn measurement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut eng = Engine::limdd();
    let mut states = Vec::new();
    for _ in 0..60 {
        let n = rng.gen_range(1..=8);
        let gates: Vec<Gate> = (0..30).map(|_| clifford_t_gate(n, &mut rng)).collect();
        states.push((n, run_gates(&mut eng, n, &gates)));
    }
    states.push((9, graph_state(&mut eng, &Graph::path(9))));
    let w = w_state_circuit(8).unwrap();
    states.push((8, run_gates(&mut eng, 8, &w.gates())));
    let mut worst = 0.0f64;
    for (n, e) in &states {
        for k in 1..=*n {
            let p0 = eng.measurement_probability(e, k, false).map_err(|err| err.to_string())?;
            let p1 = eng.measurement_probability(e, k, true).map_err(|err| err.to_string())?;
            worst = worst.max((p0 + p1 - 1.0).abs());
        }
    }
    if worst > 1e-9 {
        return Err(format!("p0 + p1 off by {worst:e}"));
    }
    let n = 6;
    let ghz: Vec<Gate> = std::iter::once(Gate::H(n)).chain((1..n).rev().map(|t| Gate::Cx { control: t + 1, target: t })).collect();
    let e = run_gates(&mut eng, n, &ghz);
    let shots = 10_000;
    let mut zeros = 0;
    let mut ones = 0;
    let mut srng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..shots {
        let s = eng.sample(&e, &mut srng).map_err(|err| err.to_string())?;
        if s.iter().all(|b| !b) {
            zeros += 1;
        } else if s.iter().all(|&b| b) {
            ones += 1;
        }
    }
    let f = zeros as f64 / shots as f64;
    let sigma = (0.25 / shots as f64).sqrt();
    let detail = format!("{} states, worst |p0+p1-1| {worst:.1e}; GHZ all-0 {zeros}, all-1 {ones} of {shots}", states.len());
    if zeros + ones != shots || (f - 0.5).abs() > 5.0 * sigma {
        return Err(detail);
    }
    Ok(detail)
}

fn stabilizer_rank_table() -> Check {
    let mut parts = Vec::new();
    let mut failed = false;
    for (n, w, chi) in [(2, 1, 1), (3, 1, 2), (4, 1, 2), (4, 2, 2), (5, 2, 2), (6, 3, 2)] {
        let (r, runs) = search_with_restarts(&AnnealConfig::new(n, w, chi, 0), 10).map_err(|e| e.to_string())?;
        let ok = r.success && r.residual < RESIDUAL_TOL;
        failed |= !ok;
        parts.push(format!("({n},{w},{chi}) {} in {runs} run(s), residual {:.1e}", if ok { "ok" } else { "FAILED" }, r.residual));
    }
    if failed {
        Err(parts.join("; "))
    } else {
        Ok(parts.join("; "))
    }
}

/// Every stabilizer subgroup on `n` qubits, as RREF generator sets.
fn all_subgroups(n: u32) -> Vec<GeneratorSet> {
    let signed: Vec<PauliLim> = all_strings(n)
        .into_iter()
        .filter(|s| !s.is_identity())
        .flat_map(|s| [1.0, -1.0].map(|k| PauliLim::new(c(k, 0.), s)))
        .collect();
    let canon = |g: &GeneratorSet| {
        let mut k: Vec<_> = group_keys(g).into_iter().collect();
        k.sort();
        k
    };
    let mut seen = HashSet::new();
    let mut frontier = vec![GeneratorSet::empty(n)];
    seen.insert(canon(&frontier[0]));
    let mut out = frontier.clone();
    while let Some(g) = frontier.pop() {
        if g.len() == n as usize {
            continue;
        }
        let keys = group_keys(&g);
        for p in &signed {
            if keys.contains(&key(p)) || keys.contains(&key(&p.scaled(c(-1., 0.)))) || !g.iter().all(|h| h.commutes_with(p)) {
                continue;
            }
            let mut gens = g.gens().to_vec();
            gens.push(*p);
            let h = GeneratorSet::new(n, gens).unwrap().rref().unwrap();
            if seen.insert(canon(&h)) {
                out.push(h.clone());
                frontier.push(h);
            }
        }
    }
    out
}

fn toolkit() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut cases = 0usize;
    let mut groups = 0usize;
    for n in 1..=3u32 {
        let subgroups = all_subgroups(n);
        groups += subgroups.len();
        let signed: Vec<PauliLim> = all_strings(n).into_iter().flat_map(|s| [1.0, -1.0].map(|k| PauliLim::new(c(k, 0.), s))).collect();
        let mut elements: HashMap<usize, HashSet<_>> = HashMap::new();
        for (gi, g) in subgroups.iter().enumerate() {
            let keys = group_keys(g);
            // rref of a shuffled, redundant generating list
            let mut gens = g.gens().to_vec();
            if !gens.is_empty() {
                gens.push(gens[0] * gens[gens.len() - 1]);
            }
            let re = GeneratorSet::new(n, gens).unwrap().rref().map_err(|e| e.to_string())?;
            if group_keys(&re) != keys || re.len() != g.len() {
                return Err(format!("rref changed group {gi} on {n} qubits"));
            }
            for p in &signed {
                if g.contains(p).map_err(|e| e.to_string())? != keys.contains(&key(p)) {
                    return Err(format!("membership of {p} wrong for group {gi}"));
                }
            }
            for _ in 0..3 {
                let a = signed[rng.gen_range(0..signed.len())].scaled(c(0.6, -0.3));
                let (rem, h) = g.division_remainder(&a).map_err(|e| e.to_string())?;
                let best = enumerate_group(n, g.gens()).iter().map(|e| *(a * *e).string()).min_by(|x, y| x.check_cmp(y)).unwrap();
                if !keys.contains(&key(&h)) || !(a * h).approx_eq(&rem) || rem.string().check_cmp(&best) != std::cmp::Ordering::Equal {
                    return Err(format!("division remainder of {a} by group {gi} on {n} qubits"));
                }
            }
            elements.insert(gi, keys);
            cases += 1;
        }
        let pairs = if n < 3 { subgroups.len() * subgroups.len() } else { 3000 };
        for t in 0..pairs {
            let (i, j) = if n < 3 { (t / subgroups.len(), t % subgroups.len()) } else { (rng.gen_range(0..subgroups.len()), rng.gen_range(0..subgroups.len())) };
            let got = intersect_stabilizer_groups(&subgroups[i], &subgroups[j]).map_err(|e| e.to_string())?;
            let want: HashSet<_> = elements[&i].intersection(&elements[&j]).cloned().collect();
            if group_keys(&got) != want {
                return Err(format!("intersection of groups {i} and {j} on {n} qubits"));
            }
            let units = [c(1., 0.), c(-1., 0.), c(0., 1.), c(0., -1.)];
            let p0 = signed[rng.gen_range(0..signed.len())].scaled(units[rng.gen_range(0..4)]);
            let p1 = signed[rng.gen_range(0..signed.len())].scaled(units[rng.gen_range(0..4)]);
            let c0: HashSet<_> = enumerate_group(n, subgroups[i].gens()).iter().map(|g| key(&(p0 * *g))).collect();
            let c1: HashSet<_> = enumerate_group(n, subgroups[j].gens()).iter().map(|g| key(&(p1 * *g))).collect();
            let common: HashSet<_> = c0.intersection(&c1).cloned().collect();
            let ok = match intersect_isomorphism_sets(&p0, &subgroups[i], &p1, &subgroups[j]).map_err(|e| e.to_string())? {
                None => common.is_empty(),
                Some((rep, grp)) => enumerate_group(n, grp.gens()).iter().map(|g| key(&(rep * *g))).collect::<HashSet<_>>() == common,
            };
            if !ok {
                return Err(format!("coset intersection for groups {i} and {j} on {n} qubits"));
            }
            cases += 1;
        }
    }
    let detail = format!("{groups} subgroups enumerated for n<=3, {cases} cases");
    if cases < 500 {
        return Err(detail);
    }
    Ok(detail)
}

fn main() {
    let checks: [(&str, fn() -> Check); 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("stabilizer towers", stabilizer_towers),
        ("cluster separation", cluster_separation),
        ("hadamard cost", hadamard_cost),
        ("w-state efficiency", w_state_efficiency),
        ("canonicity", canonicity),
        ("measurement", measurement),
        ("stabilizer rank table", stabilizer_rank_table),
        ("group toolkit", toolkit),
    ];
    let mut failures = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(d) => println!("PASS {}. {name} ({secs:.1}s): {d}", i + 1),
            Err(d) => {
                failures += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {d}", i + 1)
            }
        }
    }
    println!("{} passed, {failures} failed", checks.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
