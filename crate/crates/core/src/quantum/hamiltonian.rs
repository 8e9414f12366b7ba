use super::matrix::ComplexMatrix;
use super::pauli::{pauli_matrix, PauliString};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Trainable Pauli-sum Hamiltonian `Σ θ_k P_k + λ Σ c_j Q_j` with evolution time `t`.
///
/// The base coefficients `θ_k` are the trainable parameters; the enhancement
/// terms `Q_j` and their weights stay fixed and are switched on by `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec<T> {
    n_qubits: usize,
    base_terms: Vec<(T, PauliString)>,
    enhancement_terms: Vec<(T, PauliString)>,
    lambda: T,
    time: T,
}

impl<T: Real> HamiltonianSpec<T> {
    pub fn new(
        n_qubits: usize,
        base_terms: Vec<(T, PauliString)>,
        enhancement_terms: Vec<(T, PauliString)>,
        lambda: T,
    ) -> Result<Self> {
        for (_, p) in base_terms.iter().chain(&enhancement_terms) {
            if p.n_qubits() != n_qubits {
                return Err(Error::Spec(format!(
                    "term {p} acts on {} qubits, expected {n_qubits}",
                    p.n_qubits()
                )));
            }
        }
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(Error::invalid("lambda", format!("{lambda} must be finite and >= 0")));
        }
        Ok(Self {
            n_qubits,
            base_terms,
            enhancement_terms,
            lambda,
            time: T::one(),
        })
    }

    pub fn with_time(mut self, time: T) -> Result<Self> {
        if !time.is_finite() {
            return Err(Error::invalid("evolution time", "must be finite"));
        }
        self.time = time;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn base_terms(&self) -> &[(T, PauliString)] {
        &self.base_terms
    }

    pub fn enhancement_terms(&self) -> &[(T, PauliString)] {
        &self.enhancement_terms
    }

    pub fn n_params(&self) -> usize {
        self.base_terms.len()
    }

    pub fn params(&self) -> Vec<T> {
        self.base_terms.iter().map(|(c, _)| *c).collect()
    }

    /// Overwrites the trainable coefficients in term order.
    pub fn set_params(&mut self, theta: &[T]) -> Result<()> {
        if theta.len() != self.base_terms.len() {
            return Err(Error::Dimension(format!(
                "{} parameters for {} base terms",
                theta.len(),
                self.base_terms.len()
            )));
        }
        for ((c, _), &t) in self.base_terms.iter_mut().zip(theta) {
            *c = t;
        }
        Ok(())
    }

    pub fn with_params(&self, theta: &[T]) -> Result<Self> {
        let mut out = self.clone();
        out.set_params(theta)?;
        Ok(out)
    }

    pub fn assemble(&self) -> Result<ComplexMatrix<T>> {
        assemble_hamiltonian(self)
    }
}

/// Dense `H + λV`. With `λ = 0` the enhancement terms are not touched at all,
/// so the result is bit-identical to assembling the base terms alone.
pub fn assemble_hamiltonian<T: Real>(spec: &HamiltonianSpec<T>) -> Result<ComplexMatrix<T>> {
    let mut h = ComplexMatrix::zeros(spec.dim());
    accumulate(&mut h, &spec.base_terms, T::one())?;
    if spec.lambda != T::zero() {
        accumulate(&mut h, &spec.enhancement_terms, spec.lambda)?;
    }
    let err = h.hermiticity_error();
    debug_assert!(err < T::lit(1e-12), "assembled Hamiltonian not Hermitian: {err:e}");
    Ok(h)
}

fn accumulate<T: Real>(h: &mut ComplexMatrix<T>, terms: &[(T, PauliString)], weight: T) -> Result<()> {
    for (coef, p) in terms {
        if !coef.is_finite() {
            return Err(Error::invalid("coefficient", format!("non-finite weight on {p}")));
        }
        let c = *coef * weight;
        if c == T::zero() {
            continue;
        }
        let m: ComplexMatrix<T> = pauli_matrix(p);
        let dim = h.dim();
        // Pauli strings have one nonzero per row
        for row in 0..dim {
            for col in 0..dim {
                let z = m[(row, col)];
                if z.re != T::zero() || z.im != T::zero() {
                    h[(row, col)] = h[(row, col)] + z.scale(c);
                }
            }
        }
    }
    Ok(())
}
