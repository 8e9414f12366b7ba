//! Dense complex linear algebra and quantum-state primitives.
//!
//! Multi-qubit operators use the qubit-0-leftmost convention: for `n` qubits,
//! qubit `q` corresponds to bit `n - 1 - q` of a basis index, so `|01⟩` is
//! basis index 1 and `Z ⊗ I` is `diag(1, 1, -1, -1)`.

pub mod eigen;
pub mod hamiltonian;
pub mod matrix;
pub mod pauli;
pub mod state;

pub use eigen::HermitianEigen;
pub use hamiltonian::{assemble_hamiltonian, HamiltonianSpec};
pub use matrix::ComplexMatrix;
pub use pauli::{pauli_matrix, Pauli, PauliString, MAX_QUBITS};
pub use state::{conjugate, evolve_unitary, fidelity, measure_probabilities, trace_distance, DensityMatrix};
