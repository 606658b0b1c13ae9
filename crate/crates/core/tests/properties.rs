mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use pauli_sandwich::channel::{pauli_expand, KrausChannel};
use pauli_sandwich::checks::{push_left, push_through, CheckPolicy};
use pauli_sandwich::density::fidelity;
use pauli_sandwich::experiment::{random_clifford_circuit, run_sweep, CircuitMode, ExperimentConfig};
use pauli_sandwich::pauli::PauliString;
use pauli_sandwich::{build, find_checks, simulate, Circuit, DensityMatrix, Gate, NoiseScope, NoiseSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>(), 0u8..4)
        .prop_map(move |(x, z, ph)| PauliString::from_bits(n, x & mask, z & mask, ph).unwrap())
}

fn all_paulis(n: usize) -> Vec<PauliString> {
    let d = 1u64 << n;
    let mut out = Vec::new();
    for x in 0..d {
        for z in 0..d {
            for ph in 0..4 {
                out.push(PauliString::from_bits(n, x, z, ph).unwrap());
            }
        }
    }
    out
}

fn dense_product_agrees(a: &PauliString, b: &PauliString) {
    let (da, db) = (a.dense_matrix().unwrap(), b.dense_matrix().unwrap());
    let prod = a.multiply(b).unwrap();
    assert!(max_abs(&(prod.dense_matrix().unwrap() - &da * &db)) < 1e-12, "{a} * {b} = {prod}");
    let commutator = &da * &db - &db * &da;
    assert_eq!(a.commutes(b).unwrap(), max_abs(&commutator) < 1e-12, "{a}, {b}");
}

#[test]
fn multiply_and_commute_match_dense_exhaustively() {
    for n in 1..=2 {
        let all = all_paulis(n);
        for a in &all {
            for b in &all {
                dense_product_agrees(a, b);
            }
        }
    }
}

#[test]
fn multiply_and_commute_match_dense_on_three_qubits() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let mut draw =
            || PauliString::from_bits(3, rng.gen_range(0..8), rng.gen_range(0..8), rng.gen_range(0..4)).unwrap();
        let (a, b) = (draw(), draw());
        dense_product_agrees(&a, &b);
    }
}

#[test]
fn enumeration_is_complete_and_sorted() {
    for n in 1..=5 {
        let all: Vec<PauliString> = PauliString::enumerate_by_weight(n).collect();
        assert_eq!(all.len(), (1 << (2 * n)) - 1);
        assert!(all.windows(2).all(|w| w[0].weight() <= w[1].weight()));
        assert!(all.iter().all(|p| p.phase() == 0 && !p.is_identity()));
        let mut keys: Vec<(u64, u64)> = all.iter().map(|p| (p.x_bits(), p.z_bits())).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), all.len());
    }
}

#[test]
fn push_table_matches_conjugation_exhaustively() {
    let one = [Gate::X(0), Gate::Y(0), Gate::Z(0), Gate::H(0), Gate::S(0), Gate::Sdg(0)];
    let two = [Gate::Cx(0, 1), Gate::Cx(1, 0), Gate::Cy(0, 1), Gate::Cy(1, 0), Gate::Cz(0, 1), Gate::Cz(1, 0)];
    for (n, gates) in [(1, &one[..]), (2, &two[..])] {
        for g in gates {
            let gm = Circuit::from_gates(n, vec![*g]).unwrap().unitary().unwrap();
            for p in all_paulis(n) {
                let expect = gm.adjoint() * p.dense_matrix().unwrap() * &gm;
                let got = push_left(g, &p).unwrap().dense_matrix().unwrap();
                assert!(max_abs(&(got - expect)) < 1e-12, "{g} on {p}");
            }
        }
    }
}

#[test]
fn rz_pair_is_identity() {
    for theta in [0.0, 0.3, 1.0, 2.5, 6.0] {
        let c = Circuit::from_gates(1, vec![Gate::Rz(0, theta), Gate::Rz(0, -theta)]).unwrap();
        assert!(max_abs(&(c.unitary().unwrap() - DMatrix::identity(2, 2))) < 1e-12);
    }
}

#[test]
fn clifford_sweep_csv_is_reproducible() {
    let cfg = ExperimentConfig {
        compute_n: 3,
        cnot_counts: vec![4, 8],
        rz_count: 2,
        num_layers: vec![1, 2],
        p1_grid: vec![1e-4, 1e-2],
        circuits_per_point: 3,
        seed: 77,
        mode: CircuitMode::CliffordPlusRz,
        check_policy: CheckPolicy::LowWeightFirst,
        noisy_checks: true,
    };
    let a = run_sweep(&cfg).unwrap();
    let b = run_sweep(&cfg).unwrap();
    assert_eq!(
        pauli_sandwich::experiment::records_csv(&a.records),
        pauli_sandwich::experiment::records_csv(&b.records)
    );
    for r in &a.records {
        if let (Some(fm), Some(g)) = (r.outcome.f_mitigated, r.gain()) {
            assert!((g - (fm - r.outcome.f_unmitigated)).abs() < 1e-12);
        }
        assert!((0.0..=1.0 + 1e-12).contains(&r.outcome.postselect_prob));
    }
}

#[test]
fn postselection_rate_falls_with_layers_on_average() {
    let cfg = ExperimentConfig {
        compute_n: 2,
        cnot_counts: vec![20],
        rz_count: 0,
        num_layers: vec![1, 2, 3, 4],
        p1_grid: vec![3e-3],
        circuits_per_point: 10,
        seed: 5,
        mode: CircuitMode::CliffordOnly,
        check_policy: CheckPolicy::LowWeightFirst,
        noisy_checks: true,
    };
    let res = run_sweep(&cfg).unwrap();
    let probs: Vec<f64> = res.summary.iter().map(|a| a.mean_postselect_prob).collect();
    assert!(probs.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{probs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_is_associative((a, b, c) in (1usize..=6).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))) {
        let left = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        let right = a.multiply(&b).unwrap().multiply(&c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn text_round_trips(p in (1usize..=8).prop_flat_map(pauli)) {
        prop_assert_eq!(p.to_string().parse::<PauliString>().unwrap(), p);
    }

    #[test]
    fn circuit_unitaries_are_unitary(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(n, 50, &mut rng);
        let u = c.unitary().unwrap();
        let d = 1 << n;
        prop_assert!(max_abs(&(&u * u.adjoint() - DMatrix::identity(d, d))) < 1e-12);
        let again: Circuit = c.to_string().parse().unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn found_checks_satisfy_the_check_identity(seed in any::<u64>(), n in 1usize..=4, layers in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_circuit(n, 20, &mut rng);
        let search = find_checks(&u, layers).unwrap();
        prop_assert_eq!(&search, &find_checks(&u, layers).unwrap());
        for layer in search.checks.layers() {
            prop_assert!(layer.dense_residual(&u).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn clifford_push_never_blocks(seed in any::<u64>(), n in 2usize..=5, p in any::<(u64, u64)>()) {
        let u = random_clifford_circuit(n, 15, seed).unwrap();
        let mask = (1u64 << n) - 1;
        let c2 = PauliString::from_bits(n, p.0 & mask, p.1 & mask, 0).unwrap();
        let c1 = push_through(&u, &c2).unwrap();
        prop_assert!(c1.is_some_and(|c| c.is_hermitian()));
    }

    #[test]
    fn noisy_simulation_keeps_trace_and_hermiticity(seed in any::<u64>(), n in 1usize..=3, p1 in 0.0f64..0.1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(n, 25, &mut rng);
        let rho = simulate(&c, &random_mixed(n, &mut rng), &NoiseSpec::coupled(p1).unwrap()).unwrap();
        prop_assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        prop_assert!(rho.hermiticity_error() < 1e-10);
        prop_assert!(rho.min_eigenvalue() > -1e-10);
    }

    #[test]
    fn fidelity_is_symmetric(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_mixed(n, &mut rng), random_mixed(n, &mut rng));
        let (fab, fba) = (fidelity(&a, &b).unwrap(), fidelity(&b, &a).unwrap());
        prop_assert!((fab - fba).abs() < 1e-10);
        prop_assert!((0.0..=1.0).contains(&fab));
        prop_assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn pauli_expansion_reconstructs(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 1 << n;
        let m = DMatrix::from_fn(d, d, |_, _| cplx(&mut rng));
        prop_assert!(max_abs(&(pauli_expand(&m).unwrap().reconstruct().unwrap() - &m)) < 1e-10);
    }

    #[test]
    fn noiseless_sandwich_is_transparent(seed in any::<u64>(), n in 1usize..=3, layers in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_circuit(n, 12, &mut rng);
        let checks = find_checks(&u, layers).unwrap().checks;
        prop_assume!(!checks.is_empty());
        let rho0 = random_mixed(n, &mut rng);
        let s = build(&u, &checks).unwrap();
        let res = s.run(&rho0, &NoiseSpec::noiseless(), NoiseScope::AllGates, None).unwrap();
        prop_assert!((res.prob - 1.0).abs() < 1e-10);
        let state = res.state.unwrap();
        prop_assert!(max_abs(&(state.matrix() - ideal_output(&u, &rho0))) < 1e-10);

        let weights: usize = checks.layers().iter().map(|l| l.c1.weight() + l.c2.weight()).sum();
        prop_assert_eq!(s.check_two_qubit_gates(), weights);
    }

    #[test]
    fn generator_checks_leave_only_identity(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = if n >= 2 { random_clifford_circuit(n, 6, seed).unwrap() } else { Circuit::from_gates(1, vec![Gate::H(0)]).unwrap() };
        let checks = CheckPolicy::Lemma2Generators.find(&u, 2 * n).unwrap().checks;
        prop_assert_eq!(checks.len(), 2 * n);
        let err: KrausChannel = random_channel(n, 3, &mut rng);
        let out = err.transform_multilayer(&checks).unwrap();
        for t in out.terms() {
            let e = pauli_expand(&t.op).unwrap();
            let off: f64 = e.coefficients.iter().skip(1).map(|a| a.norm()).fold(0.0, f64::max);
            prop_assert!(off < 1e-12);
        }
    }

    #[test]
    fn postselected_state_is_physical(seed in any::<u64>(), p1 in 1e-4f64..0.05) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_circuit(2, 10, &mut rng);
        let checks = find_checks(&u, 2).unwrap().checks;
        prop_assume!(!checks.is_empty());
        let rho0 = DensityMatrix::zero_state(2).unwrap();
        let res = build(&u, &checks).unwrap().run(&rho0, &NoiseSpec::coupled(p1).unwrap(), NoiseScope::AllGates, None).unwrap();
        prop_assert!(res.prob > 0.0 && res.prob <= 1.0 + 1e-12);
        let s = res.state.unwrap();
        prop_assert!((s.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(s.min_eigenvalue() > -1e-10);
    }
}
