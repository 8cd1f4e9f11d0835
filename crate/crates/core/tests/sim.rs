mod common;

use common::{c, max_diff, random_gate};
use limdd::dd::Mode;
use limdd::dense;
use limdd::pauli::{PauliOp, Scalar};
use limdd::sim::{Engine, Gate, GatePath};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn run(engine: &mut Engine, n: u32, gates: &[Gate]) -> Vec<Scalar> {
    let mut e = engine.zero_state(n);
    for g in gates {
        e = engine.apply(&e, g).unwrap();
    }
    engine.store_mut().audit().unwrap();
    engine.to_dense(&e).unwrap()
}

#[test]
fn random_circuits_match_dense_in_every_configuration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..60 {
        let n = rng.gen_range(1..=5);
        let gates: Vec<Gate> = (0..rng.gen_range(1..30)).map(|_| random_gate(n, &mut rng)).collect();
        let want = dense::simulate(n, &gates);
        let mut configs = vec![Engine::limdd(), Engine::qmdd()];
        let mut generic = Engine::limdd();
        generic.set_gate_path(GatePath::Generic);
        configs.push(generic);
        let mut nocache = Engine::limdd();
        nocache.set_caches_enabled(false);
        configs.push(nocache);
        for (i, eng) in configs.iter_mut().enumerate() {
            let got = run(eng, n, &gates);
            let d = max_diff(&got, &want);
            assert!(d < 1e-9, "round {round} config {i}: diff {d} for {gates:?}");
        }
    }
}

#[test]
fn dense_two_qubit_gate_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m: Vec<Vec<Scalar>> = (0..4).map(|_| (0..4).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).collect();
    let pre = [Gate::H(1), Gate::H(3), Gate::T(3), Gate::Cx { control: 3, target: 2 }];
    for qs in [vec![1, 3], vec![3, 1], vec![2, 3]] {
        let mut gates = pre.to_vec();
        gates.push(Gate::Dense { qubits: qs, matrix: m.clone() });
        let want = dense::simulate(3, &gates);
        for mode in [Mode::Limdd, Mode::Qmdd] {
            let got = run(&mut Engine::new(mode), 3, &gates);
            assert!(max_diff(&got, &want) < 1e-9);
        }
    }
}

#[test]
fn cnot_matrix_convention() {
    // control above target: |10⟩ ↦ |11⟩ with the top qubit written first
    for (inp, out) in [("00", "00"), ("01", "01"), ("10", "11"), ("11", "10")] {
        for mode in [Mode::Limdd, Mode::Qmdd] {
            let mut eng = Engine::new(mode);
            let bits: Vec<bool> = inp.chars().map(|ch| ch == '1').collect();
            let e = eng.store_mut().basis_state(&bits);
            let r = eng.apply(&e, &Gate::Cx { control: 2, target: 1 }).unwrap();
            let a = eng.store().amplitude_str(&r, out).unwrap();
            assert!((a - c(1.0, 0.0)).norm() < 1e-12, "{inp} -> {out} in {mode:?}");
        }
    }
}

#[test]
fn measurement_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = rng.gen_range(1..=5);
        let gates: Vec<Gate> = (0..20).map(|_| random_gate(n, &mut rng)).collect();
        let v = dense::simulate(n, &gates);
        for mode in [Mode::Limdd, Mode::Qmdd] {
            let mut eng = Engine::new(mode);
            let mut e = eng.zero_state(n);
            for g in &gates {
                e = eng.apply(&e, g).unwrap();
            }
            for k in 1..=n {
                let want: f64 = v.iter().enumerate().filter(|(j, _)| (j >> (k - 1)) & 1 == 1).map(|(_, a)| a.norm_sqr()).sum();
                let p1 = eng.measurement_probability(&e, k, true).unwrap();
                let p0 = eng.measurement_probability(&e, k, false).unwrap();
                assert!((p1 - want).abs() < 1e-9);
                assert!((p0 + p1 - 1.0).abs() < 1e-9);
                if p1 > 1e-9 {
                    let post = eng.update_post_meas(&e, k, true).unwrap();
                    let d = eng.to_dense(&post).unwrap();
                    let expect: Vec<Scalar> = v
                        .iter()
                        .enumerate()
                        .map(|(j, a)| if (j >> (k - 1)) & 1 == 1 { a / want.sqrt() } else { c(0.0, 0.0) })
                        .collect();
                    assert!(max_diff(&d, &expect) < 1e-9);
                }
            }
            let j = rng.gen_range(0..1usize << n);
            let bits: Vec<bool> = (0..n).rev().map(|q| (j >> q) & 1 == 1).collect();
            let p = eng.prob_of_string(&e, &bits).unwrap();
            assert!((p - v[j].norm_sqr()).abs() < 1e-9);
        }
    }
}

#[test]
fn zero_probability_outcome_is_an_error() {
    let mut eng = Engine::limdd();
    let e = eng.zero_state(2);
    assert!(eng.update_post_meas(&e, 1, true).is_err());
    assert!(eng.measurement_probability(&e, 3, true).is_err());
}

#[test]
fn pauli_gates_touch_only_the_root_label() {
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(3);
    e = eng.apply(&e, &Gate::H(2)).unwrap();
    let before = eng.store().len();
    let f = eng.apply_pauli(&e, 3, PauliOp::X);
    assert_eq!(f.target, e.target);
    assert_eq!(eng.store().len(), before);
}

#[test]
fn add_of_state_and_negation_is_zero() {
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(3);
    for g in [Gate::H(1), Gate::T(1), Gate::Cx { control: 1, target: 3 }, Gate::H(2)] {
        e = eng.apply(&e, &g).unwrap();
    }
    let neg = e.scaled(c(-1.0, 0.0));
    assert!(eng.add(&e, &neg).unwrap().is_zero());
}

#[test]
fn sampling_only_returns_supported_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(3);
    for g in [Gate::H(3), Gate::Cx { control: 3, target: 2 }, Gate::Cx { control: 2, target: 1 }] {
        e = eng.apply(&e, &g).unwrap();
    }
    for _ in 0..200 {
        let s = eng.sample(&e, &mut rng).unwrap();
        assert!(s == vec![false; 3] || s == vec![true; 3]);
    }
}

fn cell(eng: &Engine, u: &limdd::dd::Edge, r: usize, col: usize, n: u32) -> Scalar {
    let mut bits = Vec::new();
    for q in (0..n).rev() {
        bits.push((r >> q) & 1 == 1);
        bits.push((col >> q) & 1 == 1);
    }
    eng.store().amplitude(u, &bits).unwrap()
}

fn dense_gate(n: u32, g: &Gate) -> Vec<Vec<Scalar>> {
    // column j = G e_j
    (0..1usize << n)
        .map(|j| {
            let mut v = vec![c(0., 0.); 1 << n];
            v[j] = c(1., 0.);
            dense::apply(&mut v, g);
            v
        })
        .collect()
}

#[test]
fn gate_diagrams_match_dense_matrices() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut eng = Engine::limdd();
    let id = eng.product_operator(1, &[]);
    assert_eq!(id.index(), 2);
    let h = eng.gate_to_dd(&Gate::H(1), 1).unwrap();
    for (r, col, want) in [(0, 0, s), (0, 1, s), (1, 0, s), (1, 1, -s)] {
        assert!((cell(&eng, &h, r, col, 1) - c(want, 0.)).norm() < 1e-12);
    }
    let cx = eng.gate_to_dd(&Gate::Cx { control: 2, target: 1 }, 2).unwrap();
    assert_eq!(cx.index(), 4);
    let gates = [
        Gate::Cx { control: 2, target: 1 },
        Gate::Cx { control: 1, target: 3 },
        Gate::Cz(3, 1),
        Gate::T(2),
        Gate::Sdg(3),
        Gate::Y(1),
        Gate::Mcx { controls: vec![(3, true), (1, false)], target: 2 },
    ];
    for mode in [Mode::Limdd, Mode::Qmdd] {
        let mut eng = Engine::new(mode);
        for g in &gates {
            let u = eng.gate_to_dd(g, 3).unwrap();
            let m = dense_gate(3, g);
            for r in 0..8 {
                for col in 0..8 {
                    assert!((cell(&eng, &u, r, col, 3) - m[col][r]).norm() < 1e-12, "{g:?} cell {r},{col}");
                }
            }
        }
    }
    assert!(Engine::limdd().gate_to_dd(&Gate::H(3), 2).is_err());
}

#[test]
fn apply_gate_checks_dimensions_and_identity() {
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(2);
    e = eng.apply(&e, &Gate::H(1)).unwrap();
    e = eng.apply(&e, &Gate::T(1)).unwrap();
    let id = eng.product_operator(2, &[]);
    let r = eng.apply_gate(&id, &e).unwrap();
    assert!(eng.store().is_pauli_equivalent(&r, &e));
    assert!(max_diff(&eng.to_dense(&r).unwrap(), &eng.to_dense(&e).unwrap()) < 1e-12);
    let one = eng.product_operator(1, &[]);
    assert!(eng.apply_gate(&one, &e).is_err());
    let h = eng.gate_to_dd(&Gate::H(1), 1).unwrap();
    let z = eng.zero_state(1);
    let plus = eng.apply_gate(&h, &z).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!(max_diff(&eng.to_dense(&plus).unwrap(), &[c(s, 0.), c(s, 0.)]) < 1e-12);
}

#[test]
fn add_examples() {
    let mut eng = Engine::limdd();
    let st = eng.store_mut();
    let zero = st.basis_state(&[false]);
    let one = st.basis_state(&[true]);
    let plus = eng.add(&zero, &one).unwrap();
    assert!(max_diff(&eng.to_dense(&plus).unwrap(), &[c(1., 0.), c(1., 0.)]) < 1e-12);
    assert!((eng.squared_norm(&plus) - 2.0).abs() < 1e-12);
    let mut e = eng.zero_state(3);
    e = eng.apply(&e, &Gate::H(2)).unwrap();
    e = eng.apply(&e, &Gate::T(2)).unwrap();
    let five = eng.add(&e.scaled(c(2., 0.)), &e.scaled(c(3., 0.))).unwrap();
    let want: Vec<Scalar> = eng.to_dense(&e).unwrap().iter().map(|a| a * 5.0).collect();
    assert!(max_diff(&eng.to_dense(&five).unwrap(), &want) < 1e-12);
    let two = eng.zero_state(2);
    assert!(eng.add(&zero, &two).is_err());
}

#[test]
fn caches_hit_on_equivalent_queries() {
    let mut eng = Engine::limdd();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 3;
    let mut a = eng.zero_state(n);
    let mut b = eng.zero_state(n);
    for _ in 0..15 {
        a = eng.apply(&a, &random_gate(n, &mut rng)).unwrap();
        b = eng.apply(&b, &random_gate(n, &mut rng)).unwrap();
    }
    let b = b.with_pauli(2, PauliOp::Y);
    let ab = eng.add(&a, &b).unwrap();
    let hits = eng.stats.add_cache_hits;
    let ba = eng.add(&b, &a).unwrap();
    assert!(eng.stats.add_cache_hits > hits, "swapped Add should hit");
    assert!(max_diff(&eng.to_dense(&ab).unwrap(), &eng.to_dense(&ba).unwrap()) < 1e-12);

    let u = eng.gate_to_dd(&Gate::Cx { control: 3, target: 1 }, n).unwrap();
    let r1 = eng.apply_gate(&u, &a).unwrap();
    let hits = eng.stats.apply_cache_hits;
    let ui = u.scaled(c(0., 1.));
    let r2 = eng.apply_gate(&ui, &a).unwrap();
    assert!(eng.stats.apply_cache_hits > hits, "phase-shifted Apply should hit");
    let want: Vec<Scalar> = eng.to_dense(&r1).unwrap().iter().map(|x| x * c(0., 1.)).collect();
    assert!(max_diff(&eng.to_dense(&r2).unwrap(), &want) < 1e-12);
}

#[test]
fn squared_norm_ignores_the_pauli_part() {
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(2);
    e = eng.apply(&e, &Gate::H(2)).unwrap();
    let p = e.premul(&"(0+3i)*XY".parse().unwrap());
    assert!((eng.squared_norm(&p) - 9.0 * eng.squared_norm(&e)).abs() < 1e-12);
    assert_eq!(eng.squared_norm(&limdd::dd::Edge::zero(2)), 0.0);
}

#[test]
fn single_qubit_gate_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n);
        for _ in 0..10 {
            e = eng.apply(&e, &random_gate(n, &mut rng)).unwrap();
        }
        let q = rng.gen_range(1..=n);
        let s1 = eng.apply_phase_s(&e, q);
        let s2 = eng.apply_phase_s(&s1, q);
        let z = eng.apply_pauli(&e, q, PauliOp::Z);
        assert!(max_diff(&eng.to_dense(&s2).unwrap(), &eng.to_dense(&z).unwrap()) < 1e-12);
    }
    for n in 1..=6 {
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n);
        for q in 1..=n {
            e = eng.apply_hadamard(&e, q);
        }
        let a = 0.5f64.powf(n as f64 / 2.0);
        assert!(eng.to_dense(&e).unwrap().iter().all(|x| (x - c(a, 0.)).norm() < 1e-12));
    }
    let mut eng = Engine::limdd();
    let e = eng.zero_state(3);
    let x = eng.apply_pauli(&e, 3, PauliOp::X);
    assert_eq!(x.target, e.target);
    assert!((eng.amplitude(&x, &[true, false, false]).unwrap() - c(1., 0.)).norm() < 1e-12);
    assert!(eng.apply_downward_cpauli(&e, 1, 2, PauliOp::X).is_err());
    assert!(eng.apply_upward_cnot(&e, 3, 1).is_err());
}

#[test]
fn probabilities_sum_to_one_and_match_named_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let n = rng.gen_range(1..=6);
        let mut eng = Engine::limdd();
        let mut e = eng.zero_state(n);
        for _ in 0..25 {
            e = eng.apply(&e, &random_gate(n, &mut rng)).unwrap();
        }
        let mut total = 0.0;
        for j in 0..1usize << n {
            let bits: Vec<bool> = (0..n).rev().map(|q| (j >> q) & 1 == 1).collect();
            total += eng.prob_of_string(&e, &bits).unwrap();
        }
        assert!((total - 1.0).abs() < 1e-6);
    }
    // GHZ: top qubit is 1/2, projecting onto 0 leaves |000⟩
    let mut eng = Engine::limdd();
    let mut e = eng.zero_state(3);
    for g in [Gate::H(3), Gate::Cx { control: 3, target: 2 }, Gate::Cx { control: 2, target: 1 }] {
        e = eng.apply(&e, &g).unwrap();
    }
    assert!((eng.measurement_probability(&e, 3, true).unwrap() - 0.5).abs() < 1e-12);
    let post = eng.update_post_meas(&e, 3, false).unwrap();
    assert!((eng.amplitude(&post, &[false; 3]).unwrap() - c(1., 0.)).norm() < 1e-12);
    // an X on the measured qubit flips which branch survives
    let flipped = e.with_pauli(1, PauliOp::X);
    let p = eng.measurement_probability(&flipped, 1, true).unwrap();
    assert!((p - 0.5).abs() < 1e-12);
    let post = eng.update_post_meas(&flipped, 1, true).unwrap();
    assert!((eng.amplitude(&post, &[false, false, true]).unwrap() - c(1., 0.)).norm() < 1e-12);
    let z = eng.zero_state(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert_eq!(eng.sample(&z, &mut rng).unwrap(), vec![false, false]);
}

#[test]
fn caches_do_not_change_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let n = rng.gen_range(2..=6);
        let gates: Vec<Gate> = (0..30).map(|_| random_gate(n, &mut rng)).collect();
        let mut on = Engine::limdd();
        let mut off = Engine::limdd();
        off.set_caches_enabled(false);
        let a = run(&mut on, n, &gates);
        let b = run(&mut off, n, &gates);
        assert!(max_diff(&a, &b) < 1e-10);
    }
}
