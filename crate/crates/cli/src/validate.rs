//! Self-check suite behind `qgan-lab validate`.
//!
//! Every check is seeded, so the report text is identical between runs.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgan_core::encoding::encode_distribution;
use qgan_core::metrics::{kl_divergence, tv_distance};
use qgan_core::oracle::{random_hermitian, taylor_exponential};
use qgan_core::qgan::{fit_discriminator, generate, grid_search_discriminator, DiscriminatorModel, GeneratorModel};
use qgan_core::quantum::{
    assemble_hamiltonian, conjugate, evolve_unitary, fidelity, measure_probabilities, pauli_matrix, trace_distance,
    HamiltonianSpec, Pauli, PauliString,
};
use qgan_core::{ComplexMatrix, DensityMatrix, ProbabilityVector, Result, TrainingConfig};

const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, Default)]
pub struct ValidateOptions {
    /// Corrupts one Hamiltonian so the checks that consume it must fail.
    pub inject_non_hermitian: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<24} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// A check passes when its measured worst error is within `tol`.
fn bounded(name: &'static str, tol: f64, measured: Result<f64>) -> CheckResult {
    match measured {
        Ok(err) => CheckResult {
            name,
            passed: err <= tol,
            detail: format!("max error {err:.3e} (tol {tol:.0e})"),
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, v| v.map(|x| acc.max(x)))
}

fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> PauliString {
    let ops = (0..n)
        .map(|_| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)])
        .collect();
    PauliString::new(ops).expect("1..=3 qubits")
}

fn random_spec(n: usize, rng: &mut ChaCha8Rng) -> HamiltonianSpec<f64> {
    let base = (0..rng.gen_range(1..6))
        .map(|_| (rng.gen_range(-2.0..2.0), random_pauli(n, rng)))
        .collect();
    let enh = (0..rng.gen_range(0..3))
        .map(|_| (rng.gen_range(-1.0..1.0), random_pauli(n, rng)))
        .collect();
    HamiltonianSpec::new(n, base, enh, rng.gen_range(0.0..1.5)).expect("matching qubit counts")
}

/// `A A† / Tr(A A†)` with `A` of the given rank.
fn random_density(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> DensityMatrix<f64> {
    let a: Vec<Complex<f64>> = (0..dim * rank)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = (0..rank).map(|k| a[i * rank + k] * a[j * rank + k].conj()).sum();
        }
    }
    let tr = m.trace().re;
    let mut m = m.scale_real(1.0 / tr);
    for i in 0..dim {
        m[(i, i)].im = 0.0;
    }
    DensityMatrix::new(m).expect("A A† is a state")
}

fn random_probs(dim: usize, rng: &mut ChaCha8Rng) -> ProbabilityVector<f64> {
    let w: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..1.0) + 1e-3).collect();
    let s: f64 = w.iter().sum();
    ProbabilityVector::new(w.iter().map(|x| x / s).collect()).expect("normalized")
}

pub fn validate(options: ValidateOptions) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = Vec::new();

    checks.push(bounded(
        "pauli_algebra",
        1e-12,
        max_of((1..=3).flat_map(|n| {
            (0..4usize.pow(n as u32)).map(move |code| {
                let ops = (0..n)
                    .map(|q| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][(code >> (2 * q)) & 3])
                    .collect();
                let p: ComplexMatrix<f64> = pauli_matrix(&PauliString::new(ops)?);
                let square = p.matmul(&p)?.max_abs_diff(&ComplexMatrix::identity(p.dim()));
                Ok(p.hermiticity_error().max(p.unitarity_error()).max(square))
            })
        })),
    ));

    let specs: Vec<HamiltonianSpec<f64>> = (0..20).map(|i| random_spec(1 + i % 3, &mut rng)).collect();
    let mut hams: Vec<ComplexMatrix<f64>> = specs
        .iter()
        .map(|s| s.assemble())
        .collect::<Result<_>>()
        .expect("finite");
    if options.inject_non_hermitian {
        hams[1][(0, 1)] += Complex::new(0.5, 0.0);
    }

    checks.push(bounded(
        "hamiltonian_hermitian",
        1e-12,
        Ok(hams.iter().map(|h| h.hermiticity_error()).fold(0.0, f64::max)),
    ));

    checks.push(bounded(
        "lambda_zero_ablation",
        0.0,
        max_of(specs.iter().map(|s| {
            let zeroed = HamiltonianSpec::new(
                s.n_qubits(),
                s.base_terms().to_vec(),
                s.enhancement_terms().to_vec(),
                0.0,
            )?;
            let bare = HamiltonianSpec::new(s.n_qubits(), s.base_terms().to_vec(), Vec::new(), 0.0)?;
            Ok(assemble_hamiltonian(&zeroed)?.max_abs_diff(&assemble_hamiltonian(&bare)?))
        })),
    ));

    checks.push(bounded(
        "unitarity",
        1e-10,
        max_of(hams.iter().map(|h| Ok(evolve_unitary(h, 1.0)?.unitarity_error()))),
    ));

    let times: Vec<(f64, f64)> = hams
        .iter()
        .map(|_| (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0)))
        .collect();
    checks.push(bounded(
        "evolution_group",
        1e-9,
        max_of(hams.iter().zip(&times).map(|(h, &(s, t))| {
            let lhs = evolve_unitary(h, s)?.matmul(&evolve_unitary(h, t)?)?;
            Ok(lhs.max_abs_diff(&evolve_unitary(h, s + t)?))
        })),
    ));

    let states: Vec<DensityMatrix<f64>> = hams
        .iter()
        .map(|h| {
            let dim = h.dim();
            let rank = rng.gen_range(1..=dim);
            random_density(dim, rank, &mut rng)
        })
        .collect();
    let rotated: Vec<Result<DensityMatrix<f64>>> = hams
        .iter()
        .zip(&states)
        .map(|(h, rho)| conjugate(&evolve_unitary(h, 1.0)?, rho))
        .collect();
    checks.push(bounded(
        "density_validity",
        1e-10,
        max_of(rotated.iter().zip(&states).map(|(r, rho)| {
            let r = r.clone()?;
            DensityMatrix::new(r.matrix().clone())?;
            let (a, b) = (r.eigenvalues()?, rho.eigenvalues()?);
            Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
        })),
    ));

    checks.push(bounded(
        "generated_state_validity",
        1e-10,
        max_of((1..=3).map(|n| {
            let cfg = TrainingConfig::new(n).with_lambda(0.5);
            let mut spec = cfg.generator_spec::<f64>()?;
            let theta: Vec<f64> = (0..spec.n_params()).map(|_| rng.gen_range(-3.0..3.0)).collect();
            spec.set_params(&theta)?;
            let rho = generate(&GeneratorModel::new(spec)?)?;
            DensityMatrix::new(rho.matrix().clone())?;
            Ok((rho.matrix().trace().re - 1.0).abs())
        })),
    ));

    let dists: Vec<ProbabilityVector<f64>> = (0..30).map(|_| random_probs(8, &mut rng)).collect();
    checks.push(bounded(
        "encoding_round_trip",
        1e-12,
        max_of(dists.iter().map(|p| {
            let back = measure_probabilities(&encode_distribution(p))?;
            Ok(back
                .iter()
                .zip(p.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max))
        })),
    ));

    let same_dim: Vec<(usize, usize, usize)> = (0..states.len())
        .filter_map(|i| {
            let j = (i + 3) % states.len();
            let k = (i + 6) % states.len();
            let d = states[i].dim();
            (states[j].dim() == d && states[k].dim() == d).then_some((i, j, k))
        })
        .collect();
    checks.push(bounded(
        "trace_distance_axioms",
        1e-9,
        max_of(same_dim.iter().map(|&(i, j, k)| {
            let (a, b, c) = (&states[i], &states[j], &states[k]);
            let ab = trace_distance(a, b)?;
            let sym = (ab - trace_distance(b, a)?).abs();
            let ident = trace_distance(a, a)?;
            let tri = (ab - trace_distance(a, c)? - trace_distance(c, b)?).max(0.0);
            let range = (-ab).max(ab - 1.0).max(0.0);
            let u = evolve_unitary(&hams[i], 1.0)?;
            let inv = (trace_distance(&conjugate(&u, a)?, &conjugate(&u, b)?)? - ab).abs();
            Ok(sym.max(ident).max(tri).max(range).max(inv))
        })),
    ));

    checks.push(bounded(
        "fidelity_bounds",
        1e-9,
        max_of(same_dim.iter().map(|&(i, j, _)| {
            let (a, b) = (&states[i], &states[j]);
            let f = fidelity(a, b)?;
            let t = trace_distance(a, b)?;
            let sym = (f - fidelity(b, a)?).abs();
            let self_f = (1.0 - fidelity(a, a)?).abs();
            let lower = (1.0 - f.sqrt() - t).max(0.0);
            let upper = (t - (1.0 - f).max(0.0).sqrt()).max(0.0);
            Ok(sym.max(self_f).max(lower).max(upper))
        })),
    ));

    checks.push(bounded(
        "tv_metric_axioms",
        1e-12,
        max_of((0..dists.len()).map(|i| {
            let (p, q, r) = (&dists[i], &dists[(i + 1) % 30], &dists[(i + 2) % 30]);
            let pq = tv_distance(p, q)?;
            let sym = (pq - tv_distance(q, p)?).abs();
            let tri = (pq - tv_distance(p, r)? - tv_distance(r, q)?).max(0.0);
            let gibbs = (-kl_divergence(p, q)?).max(0.0);
            Ok(sym.max(tv_distance(p, p)?).max(tri).max(gibbs))
        })),
    ));

    checks.push(bounded(
        "tv_equals_trace_distance",
        1e-10,
        max_of((0..dists.len()).map(|i| {
            let (p, q) = (&dists[i], &dists[(i + 1) % 30]);
            Ok((tv_distance(p, q)? - trace_distance(&encode_distribution(p), &encode_distribution(q))?).abs())
        })),
    ));

    let mut oracle_rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    checks.push(bounded(
        "taylor_oracle",
        1e-8,
        max_of((0..20).map(|_| {
            let h: ComplexMatrix<f64> = random_hermitian(8, 5.0, &mut oracle_rng);
            Ok(evolve_unitary(&h, 1.0)?.max_abs_diff(&taylor_exponential(&h, 1.0, 40)?))
        })),
    ));

    checks.push(bounded("grid_oracle", 0.05, grid_oracle(&mut oracle_rng)));

    ValidationReport { checks }
}

/// Worst gap between the gradient-trained discriminator and the 101×101 grid optimum.
fn grid_oracle(rng: &mut ChaCha8Rng) -> Result<f64> {
    let cfg = TrainingConfig::new(1);
    let rho_r = encode_distribution(&ProbabilityVector::new(vec![0.75, 0.25])?);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let mut gs = cfg.generator_spec::<f64>()?;
        let tg: Vec<f64> = (0..gs.n_params()).map(|_| rng.gen_range(-3.0..3.0)).collect();
        gs.set_params(&tg)?;
        let rho_g = generate(&GeneratorModel::new(gs)?)?;
        let d = DiscriminatorModel::new(cfg.discriminator_spec::<f64>()?);
        let grid = grid_search_discriminator(&rho_r, &rho_g, &d, 101)?;
        let mut trained = d.with_params(&[0.05, -0.03])?;
        let fitted = fit_discriminator(&mut trained, &rho_r, &rho_g, 0.05, 1e-4, 3000)?;
        worst = worst.max((grid.objective - fitted).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_build_passes() {
        let report = validate(ValidateOptions::default());
        assert!(report.passed(), "{report}");
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn injected_fault_is_named() {
        let report = validate(ValidateOptions {
            inject_non_hermitian: true,
        });
        assert_eq!(report.exit_code(), 2);
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert!(failed.contains(&"hamiltonian_hermitian"), "{failed:?}");
    }
}
