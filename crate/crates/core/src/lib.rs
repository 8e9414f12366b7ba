//! Desk-scale quantum GAN laboratory.
//!
//! A dense density-matrix simulator, a Hamiltonian-evolution generator and
//! discriminator with an optional entangling enhancement term, a classical
//! softmax/logistic GAN on the same task, and the metrics needed to compare
//! how many iterations each takes to fit a target distribution.
//!
//! All numeric code is generic over [`Real`]; the `*F64` / `*F32` aliases
//! below name the concrete instantiations.

// `!(x < tol)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod encoding;
pub mod error;
pub mod metrics;
pub mod oracle;
pub mod qgan;
pub mod quantum;
pub mod scalar;

pub use classical::{classical_discriminator, classical_generator_probs, train_classical, ClassicalGanModel};
pub use encoding::{
    empirical_distribution, encode_distribution, load_dataset, DataSource, DatasetSpec, ProbabilityVector,
};
pub use error::{Error, Result};
pub use metrics::{build_compare_report, iterations_to_convergence, kl_divergence, tv_distance, CompareReport};
pub use qgan::{train, ObjectiveMode, TrainingConfig, TrainingResult};
pub use quantum::{ComplexMatrix, DensityMatrix, HamiltonianSpec, Pauli, PauliString};
pub use scalar::Real;

pub type ComplexMatrixF64 = ComplexMatrix<f64>;
pub type ComplexMatrixF32 = ComplexMatrix<f32>;
pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type DensityMatrixF32 = DensityMatrix<f32>;
pub type HamiltonianSpecF64 = HamiltonianSpec<f64>;
pub type HamiltonianSpecF32 = HamiltonianSpec<f32>;
pub type ProbabilityVectorF64 = ProbabilityVector<f64>;
pub type ProbabilityVectorF32 = ProbabilityVector<f32>;
pub type TrainingResultF64 = TrainingResult<f64>;
pub type TrainingResultF32 = TrainingResult<f32>;
pub type GeneratorModelF64 = qgan::GeneratorModel<f64>;
pub type DiscriminatorModelF64 = qgan::DiscriminatorModel<f64>;
pub type ClassicalGanModelF64 = ClassicalGanModel<f64>;
