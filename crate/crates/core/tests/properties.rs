use num_complex::Complex;
use proptest::prelude::*;

use qgan_core::classical::classical_generator_probs;
use qgan_core::encoding::{empirical_distribution, encode_distribution};
use qgan_core::metrics::{kl_divergence, tv_distance};
use qgan_core::qgan::{discriminate, fd_gradient, generate, objective_literal, DiscriminatorModel, GeneratorModel};
use qgan_core::quantum::{
    assemble_hamiltonian, conjugate, evolve_unitary, fidelity, measure_probabilities, trace_distance, ComplexMatrix,
    DensityMatrix, HamiltonianSpec, HermitianEigen, Pauli, PauliString,
};
use qgan_core::ProbabilityVector;

fn pauli_string(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(
        prop_oneof![Just(Pauli::I), Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)],
        n,
    )
    .prop_map(|ops| PauliString::new(ops).unwrap())
}

fn hamiltonian(n: usize) -> impl Strategy<Value = HamiltonianSpec<f64>> {
    (
        prop::collection::vec((-2.0..2.0f64, pauli_string(n)), 1..5),
        prop::collection::vec((-1.0..1.0f64, pauli_string(n)), 0..3),
        0.0..1.5f64,
    )
        .prop_map(move |(base, enh, lambda)| HamiltonianSpec::new(n, base, enh, lambda).unwrap())
}

/// `A A† / Tr(A A†)` for a random complex `A` with the given rank.
fn density(n: usize) -> impl Strategy<Value = DensityMatrix<f64>> {
    let dim = 1usize << n;
    (1..=dim).prop_flat_map(move |rank| {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * rank).prop_filter_map("zero draw", move |vals| {
            let mut m = ComplexMatrix::zeros(dim);
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = Complex::new(0.0, 0.0);
                    for k in 0..rank {
                        let a = vals[i * rank + k];
                        let b = vals[j * rank + k];
                        acc += Complex::new(a.0, a.1) * Complex::new(b.0, -b.1);
                    }
                    m[(i, j)] = acc;
                }
            }
            let tr = m.trace().re;
            if tr < 1e-3 {
                return None;
            }
            let mut out = m.scale_real(1.0 / tr);
            for i in 0..dim {
                out[(i, i)].im = 0.0;
            }
            Some(DensityMatrix::new(out).unwrap())
        })
    })
}

fn probs(n: usize) -> impl Strategy<Value = ProbabilityVector<f64>> {
    prop::collection::vec(0.0..1.0f64, 1usize << n).prop_filter_map("all zero", |w| {
        let s: f64 = w.iter().sum();
        (s > 1e-6).then(|| ProbabilityVector::new(w.iter().map(|x| x / s).collect()).unwrap())
    })
}

fn sorted_eigs(rho: &DensityMatrix<f64>) -> Vec<f64> {
    rho.eigenvalues().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_is_unitary(h in hamiltonian(2), t in -3.0..3.0f64) {
        let u = evolve_unitary(&assemble_hamiltonian(&h).unwrap(), t).unwrap();
        prop_assert!(u.unitarity_error() < 1e-10);
    }

    #[test]
    fn evolution_group_property(h in hamiltonian(3), t1 in -2.0..2.0f64, t2 in -2.0..2.0f64) {
        let m = h.assemble().unwrap();
        let a = evolve_unitary(&m, t1).unwrap();
        let b = evolve_unitary(&m, t2).unwrap();
        let ab = evolve_unitary(&m, t1 + t2).unwrap();
        prop_assert!((&a * &b).max_abs_diff(&ab) < 1e-9);
    }

    #[test]
    fn zero_lambda_matches_base_alone(h in hamiltonian(2)) {
        let with = HamiltonianSpec::new(2, h.base_terms().to_vec(), h.enhancement_terms().to_vec(), 0.0).unwrap();
        let without = HamiltonianSpec::new(2, h.base_terms().to_vec(), vec![], 0.0).unwrap();
        prop_assert_eq!(with.assemble().unwrap(), without.assemble().unwrap());
    }

    #[test]
    fn assembled_hamiltonian_is_hermitian(h in hamiltonian(3)) {
        prop_assert!(h.assemble().unwrap().hermiticity_error() < 1e-12);
    }

    #[test]
    fn conjugation_preserves_state(h in hamiltonian(2), rho in density(2)) {
        let u = evolve_unitary(&h.assemble().unwrap(), 1.0).unwrap();
        let out = conjugate(&u, &rho).unwrap();
        // revalidate all three invariants
        let checked = DensityMatrix::new(out.matrix().clone());
        prop_assert!(checked.is_ok());
        let before = sorted_eigs(&rho);
        let after = sorted_eigs(&out);
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn trace_distance_axioms(a in density(2), b in density(2), c in density(2), h in hamiltonian(2)) {
        let ab = trace_distance(&a, &b).unwrap();
        let ba = trace_distance(&b, &a).unwrap();
        let bc = trace_distance(&b, &c).unwrap();
        let ac = trace_distance(&a, &c).unwrap();
        prop_assert!((ab - ba).abs() < 1e-9);
        prop_assert!(ac <= ab + bc + 1e-9);
        prop_assert!(trace_distance(&a, &a).unwrap() < 1e-9);
        let u = evolve_unitary(&h.assemble().unwrap(), 1.0).unwrap();
        let rotated = trace_distance(&conjugate(&u, &a).unwrap(), &conjugate(&u, &b).unwrap()).unwrap();
        prop_assert!((rotated - ab).abs() < 1e-9);
    }

    #[test]
    fn fidelity_symmetry_and_fuchs_van_de_graaf(a in density(2), b in density(2)) {
        let f_ab = fidelity(&a, &b).unwrap();
        let f_ba = fidelity(&b, &a).unwrap();
        prop_assert!((f_ab - f_ba).abs() < 1e-9, "{} vs {}", f_ab, f_ba);
        let t = trace_distance(&a, &b).unwrap();
        prop_assert!(1.0 - f_ab.sqrt() <= t + 1e-9);
        prop_assert!(t <= (1.0 - f_ab).max(0.0).sqrt() + 1e-9);
    }

    #[test]
    fn encoding_round_trip(p in probs(3)) {
        let rho = encode_distribution(&p);
        prop_assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
        let back = measure_probabilities(&rho).unwrap();
        for (x, y) in back.iter().zip(p.iter()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        let purity: f64 = p.iter().map(|x| x * x).sum();
        prop_assert!((rho.purity() - purity).abs() < 1e-12);
    }

    #[test]
    fn histogram_ignores_order(mut samples in prop::collection::vec(0usize..4, 1..50), seed in any::<u64>()) {
        let a: ProbabilityVector<f64> = empirical_distribution(&samples, 2).unwrap();
        // deterministic shuffle
        let len = samples.len();
        let mut s = seed;
        for i in (1..len).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            samples.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b: ProbabilityVector<f64> = empirical_distribution(&samples, 2).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn tv_is_a_metric(p in probs(2), q in probs(2), r in probs(2)) {
        let pq = tv_distance(&p, &q).unwrap();
        prop_assert!((pq - tv_distance(&q, &p).unwrap()).abs() < 1e-12);
        prop_assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        prop_assert!(tv_distance(&p, &r).unwrap() <= pq + tv_distance(&q, &r).unwrap() + 1e-12);
    }

    #[test]
    fn kl_is_nonnegative(p in probs(2), q in probs(2)) {
        prop_assert!(kl_divergence(&p, &q).unwrap() >= -1e-12);
    }

    #[test]
    fn tv_equals_trace_distance_of_encodings(p in probs(2), q in probs(2)) {
        let tv = tv_distance(&p, &q).unwrap();
        let td = trace_distance(&encode_distribution(&p), &encode_distribution(&q)).unwrap();
        prop_assert!((tv - td).abs() < 1e-10);
    }

    #[test]
    fn generated_states_are_valid(theta in prop::collection::vec(-3.0..3.0f64, 5), lambda in 0.0..2.0f64) {
        let n = 2;
        let base: Vec<_> = ["XI", "ZI", "IX", "IZ", "ZZ"].iter().zip(&theta)
            .map(|(s, &t)| (t, s.parse::<PauliString>().unwrap())).collect();
        let enh = vec![(1.0, "XX".parse().unwrap()), (1.0, "YY".parse().unwrap())];
        let g = GeneratorModel::new(HamiltonianSpec::new(n, base, enh, lambda).unwrap()).unwrap();
        let rho = generate(&g).unwrap();
        prop_assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
    }

    #[test]
    fn enhancement_terms_inert_at_zero_lambda(theta in prop::collection::vec(-3.0..3.0f64, 5), enh in prop::collection::vec((-2.0..2.0f64, pauli_string(2)), 1..4)) {
        let base: Vec<_> = ["XI", "ZI", "IX", "IZ", "ZZ"].iter().zip(&theta)
            .map(|(s, &t)| (t, s.parse::<PauliString>().unwrap())).collect();
        let plain = GeneratorModel::new(HamiltonianSpec::new(2, base.clone(), vec![], 0.0).unwrap()).unwrap();
        let enhanced = GeneratorModel::new(HamiltonianSpec::new(2, base, enh, 0.0).unwrap()).unwrap();
        prop_assert_eq!(generate(&plain).unwrap(), generate(&enhanced).unwrap());
    }

    #[test]
    fn discriminator_is_affine(h in hamiltonian(2), a in density(2), b in density(2), alpha in 0.0..=1.0f64) {
        let d = DiscriminatorModel::new(h);
        let mixed = a.mix(&b, alpha).unwrap();
        let lhs = discriminate(&d, &mixed).unwrap();
        let rhs = alpha * discriminate(&d, &a).unwrap() + (1.0 - alpha) * discriminate(&d, &b).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn literal_objective_with_identities_is_two(rho_r in density(2), rho_0 in density(2)) {
        let empty = || HamiltonianSpec::new(2, vec![], vec![], 0.0).unwrap();
        let g = GeneratorModel::with_initial_state(empty(), rho_0).unwrap();
        let d = DiscriminatorModel::new(empty());
        prop_assert!((objective_literal(&rho_r, &g, &d).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fd_gradient_exact_on_quadratics(
        coeffs in prop::collection::vec(-3.0..3.0f64, 4),
        x in prop::collection::vec(-5.0..5.0f64, 4),
    ) {
        let f = |t: &[f64]| t.iter().zip(&coeffs).map(|(x, c)| c * x * x + 0.5 * x).sum::<f64>();
        let g = fd_gradient(f, &x, 1e-4).unwrap();
        for ((gi, xi), ci) in g.iter().zip(&x).zip(&coeffs) {
            prop_assert!((gi - (2.0 * ci * xi + 0.5)).abs() < 1e-6);
        }
    }

    #[test]
    fn softmax_is_normalized_and_shift_invariant(
        phi in prop::collection::vec(-20.0..20.0f64, 4),
        shift in -50.0..50.0f64,
    ) {
        let p = classical_generator_probs(&phi).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let shifted: Vec<f64> = phi.iter().map(|x| x + shift).collect();
        let q = classical_generator_probs(&shifted).unwrap();
        for (a, b) in p.iter().zip(q.iter()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn eigendecomposition_handles_largest_register() {
    // 10 qubits is the desk-scale cap; a diagonal Hamiltonian keeps this quick
    let spec = HamiltonianSpec::new(
        10,
        vec![
            (0.7, "ZIIIIIIIIZ".parse().unwrap()),
            (-0.2, "IIIIZIIIII".parse().unwrap()),
        ],
        vec![],
        0.0,
    )
    .unwrap();
    let h = spec.assemble().unwrap();
    assert_eq!(h.dim(), 1024);
    let eig: HermitianEigen<f64> = HermitianEigen::new(&h).unwrap();
    assert!((eig.values[0] + 0.9).abs() < 1e-12);
}
